#pragma once
#include <stdexcept>
#include <string>

namespace pb {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define PB_DEFINE_ERROR(NAME)                                        \
    struct NAME : Error {                                            \
        explicit NAME(const std::string& m = #NAME) : Error(m) {}    \
    }

PB_DEFINE_ERROR(UndefinedCrossRatio);
PB_DEFINE_ERROR(DegenerateTriple);
PB_DEFINE_ERROR(NoSuchInvolution);
PB_DEFINE_ERROR(DegenerateQuadratic);
PB_DEFINE_ERROR(SingularMap);
PB_DEFINE_ERROR(ContainedLine);
PB_DEFINE_ERROR(SingularPointOfConic);
PB_DEFINE_ERROR(BasePoint);
PB_DEFINE_ERROR(AllMembersSingular);
PB_DEFINE_ERROR(DegeneratePencil);
PB_DEFINE_ERROR(SingularConic);
PB_DEFINE_ERROR(BaseDataUnavailable);
PB_DEFINE_ERROR(BasePointOfStructure);
PB_DEFINE_ERROR(VerificationFailed);
PB_DEFINE_ERROR(EvaluationOnExceptionalLine);
PB_DEFINE_ERROR(PencilNotPreserved);
PB_DEFINE_ERROR(NotTypeA);
PB_DEFINE_ERROR(ZeroMu);
PB_DEFINE_ERROR(TangentialIncidence);
PB_DEFINE_ERROR(CornerHit);
PB_DEFINE_ERROR(NoRealTangent);
PB_DEFINE_ERROR(UnsupportedFieldKind);
PB_DEFINE_ERROR(DegenerateQuadrilateral);
PB_DEFINE_ERROR(ParseError);
PB_DEFINE_ERROR(ValidationFailed);

#undef PB_DEFINE_ERROR

} // namespace pb
