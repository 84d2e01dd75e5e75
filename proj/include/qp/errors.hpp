#pragma once

#include <stdexcept>
#include <string>

namespace qp {

/// Base class for all qp errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QP_ERROR(Name)                                                        \
    struct Name : Error {                                                     \
        explicit Name(const std::string& what = #Name) : Error(what) {}       \
    }

// core_algebra
QP_ERROR(ZeroForm);
QP_ERROR(UndefinedJ);
QP_ERROR(SingularSubstitution);
QP_ERROR(ZeroPolynomial);
QP_ERROR(CertificationFailure);

// pencil
QP_ERROR(DependentGenerators);
QP_ERROR(SingularGroupElement);
QP_ERROR(LineInD);

// normal_forms
QP_ERROR(RepeatedLambda);
QP_ERROR(NotSmooth);
QP_ERROR(NotNodal);

// moduli
QP_ERROR(CoincidentRoots);

// schubert
QP_ERROR(NotTopDegree);
QP_ERROR(NonDivisibleMultiplicity);
QP_ERROR(AmbientMismatch);

// slice_lab
QP_ERROR(BadSlice);
QP_ERROR(GenericityExhausted);
QP_ERROR(PoleValue);

// interfaces
QP_ERROR(SchemaError);

#undef QP_ERROR

}  // namespace qp
