#include "qtl/q_calculus.hpp"

namespace qtl {

CoeffGrid op_commutator(const CoeffGrid& a, const CoeffGrid& b) {
    require_same_size(a, b, "op_commutator");
    return a * b - b * a;
}

CoeffGrid field_commutator(const CoeffGrid& f, const CoeffGrid& g) {
    require_same_size(f, g, "field_commutator");
    const CoeffGrid bracket = cplx(0.0, 1.0) * op_commutator(q_transform(f), q_transform(g));
    // i[Qf, Qg] is Hermitian; its anti-Hermitian part is round-off and is dropped.
    return s_inv(hermitian_split(bracket).re);
}

ComplexField field_commutator(const ComplexField& u, const ComplexField& v) {
    return {field_commutator(u.re, v.re) - field_commutator(u.im, v.im),
            field_commutator(u.re, v.im) + field_commutator(u.im, v.re)};
}

}  // namespace qtl
