//! Exact arithmetic in the algebra `A = ℓ¹(Cu2 ∖ {◊}, #)` for finitely
//! supported elements, the ideal `J` generated by `f0`, membership
//! certificates, and factorizations of the unit.

mod element;
mod factorize;
mod ideal;
mod scalar;

pub use element::{sharp_product, Element};
pub use factorize::{cpi_upper_bound, factorize_identity, FactorizationWitness, SearchTrace};
pub use ideal::{
    classes, conjugate_branch, first_nonzero_branch, ideal_certificate, ideal_generator,
    in_ideal, symmetric_class_part, zero_sums_at, BranchSum, CertificateTerm, ClassCoefficients,
    IdealCertificate,
};
pub use scalar::{format_rational, parse_rational, Scalar};

/// The basis vector `δ_t`; fails on the zero element.
pub fn delta(t: &crate::semigroup::CuElement) -> crate::Result<Element> {
    Element::delta_of(t)
}

/// `f0 = δ_e − δ_{s1 s1*} − δ_{s2 s2*}`.
pub fn f0() -> Element {
    Element::f0()
}
