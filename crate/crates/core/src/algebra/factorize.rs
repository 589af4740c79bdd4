//! Constructive factorization of the unit through elements outside `J`.
//!
//! For `f ∉ J` there is a coreless `v = s_i s_j*` and a branch along which
//! the sums of `f` do not vanish. Conjugating by `s_i*`, `s_j` moves that
//! branch to the class of `e`; conjugating further along the branch
//! (`δ_{s_n*} # · # δ_{s_n}`) collects the branch sum `z` at `e`, and a final
//! letter-by-letter elimination kills the remaining support. The witness is
//! then `g = z⁻¹ δ_{s_{inp}*}`, `h = δ_{s_{jnp}}`.

use serde::{Deserialize, Serialize};

use super::element::Element;
use super::ideal::{classes, conjugate_branch, first_nonzero_branch};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::semigroup::Monomial;
use crate::words::Word;

/// The choices made while constructing a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchTrace {
    /// Coreless element whose class carries a non-vanishing branch.
    pub class: Monomial,
    /// Shortest settled prefix of that branch.
    pub branch: Word,
    /// Branch prefix extended to the conjugation depth.
    pub extended_branch: Word,
    /// The non-zero branch sum.
    pub z: Scalar,
    /// Letters appended during elimination.
    pub elimination: Word,
}

/// `g`, `h` with `g # f # h = δ_e`, and `cost = ‖g‖₁ ‖h‖₁`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationWitness {
    pub g: Element,
    pub h: Element,
    pub cost: f64,
    pub trace: SearchTrace,
}

impl FactorizationWitness {
    pub fn verifies(&self, f: &Element) -> bool {
        self.g.sharp(f).sharp(&self.h) == Element::unit()
    }
}

pub fn factorize_identity(f: &Element) -> Result<FactorizationWitness> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let (class, branch) = classes(f)
        .into_iter()
        .find_map(|(v, coeffs)| first_nonzero_branch(&coeffs).map(|b| (v, b)))
        .ok_or(Error::InIdeal)?;

    // Move the class of v onto the class of e.
    let moved = Element::delta(Monomial::co_isometry(class.i().clone()))
        .sharp(f)
        .sharp(&Element::delta(Monomial::isometry(class.j().clone())));

    // Deep enough that s_{np} s_{np}* lies outside the support for every p ≠ ∅.
    let depth = moved.max_length().div_ceil(2).max(branch.prefix.len());
    let extension = Word::repeat(1, depth - branch.prefix.len());
    let extended_branch = branch.prefix.concat(&extension);

    let conjugated = conjugate_branch(&moved, &extended_branch);
    let z = conjugated.coeff(&Monomial::identity());
    if z != branch.sum {
        return Err(Error::Internal(format!(
            "branch sum {} does not match collected coefficient {z}",
            branch.sum
        )));
    }
    let mut residual = &conjugated - &Element::term(Monomial::identity(), z.clone());

    let mut elimination = Vec::new();
    let budget = moved.len() + 1;
    while !residual.is_zero() {
        if elimination.len() >= budget {
            return Err(Error::Internal(format!(
                "elimination did not terminate within {budget} steps"
            )));
        }
        let (letter, next) = [1u8, 2]
            .into_iter()
            .map(|l| (l, conjugate_branch(&residual, &Word::letter(l))))
            .find(|(_, next)| next.len() < residual.len())
            .ok_or_else(|| Error::Internal("no letter shrinks the residual".into()))?;
        if !next.coeff(&Monomial::identity()).is_zero() {
            return Err(Error::Internal(
                "elimination step touched the coefficient of e".into(),
            ));
        }
        elimination.push(letter);
        residual = next;
    }
    let elimination = Word::new(elimination)?;

    let tail = extended_branch.concat(&elimination);
    let z_inv = z.inv().expect("branch sum is non-zero");
    let g = Element::term(Monomial::co_isometry(class.i().concat(&tail)), z_inv);
    let h = Element::delta(Monomial::isometry(class.j().concat(&tail)));
    let witness = FactorizationWitness {
        cost: g.l1_norm() * h.l1_norm(),
        g,
        h,
        trace: SearchTrace {
            class,
            branch: branch.prefix,
            extended_branch,
            z,
            elimination,
        },
    };
    if !witness.verifies(f) {
        return Err(Error::WitnessMismatch);
    }
    Ok(witness)
}

/// Cost of the constructed witness: an upper bound for the factorization
/// constant of `f` in the quotient by `J`.
pub fn cpi_upper_bound(f: &Element) -> Result<f64> {
    factorize_identity(f).map(|w| w.cost)
}
