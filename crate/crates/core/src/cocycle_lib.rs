//! Explicit 2-cocycle families and independence of their cohomology classes.
//!
//! - [`degenerate_generator`]: `Σ_{x,y} χ_{(x,y,y)}`, generating the
//!   degenerate cohomology.
//! - [`ring_cocycle`]: `(ax + b(z−y) + c)(z−y)` on `Z_n` with values in `Z_n`.
//! - [`phi`]: on `Z_n`, the indicator of triples `(x, y, y+i)`.
//! - [`psi_dihedral`]: on `D_n`, the indicator of `(x, r^j, r^{j+i})` and
//!   `(x, ar^{−j}, ar^{−j−i})`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::algebra::FiniteGroup;
use crate::tsd_complex::{first_cocycle_failure, Coefficients, Cochain2, Cocomplex2, ComplexVariant};
use crate::{Error, Result};

/// A cochain from one of the explicit families, with the variant it is
/// declared to be a cocycle of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCocycle {
    /// Human-readable label such as `phi_2` or `ring(1,0,0)`.
    pub label: String,
    /// The values.
    pub cochain: Cochain2,
    /// The complex it is a cocycle of.
    pub variant: ComplexVariant,
}

impl NamedCocycle {
    /// Exhaustive check of the cocycle condition over every quintuple.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        match first_cocycle_failure(g, &self.cochain) {
            None => Ok(()),
            Some(q) => Err(Error::NotACocycle(format!("{} fails at {:?}", self.label, q))),
        }
    }
}

/// `Σ_{(x,y)} χ_{(x,y,y)}`, a cocycle of the degenerate complex.
pub fn degenerate_generator(g: &FiniteGroup, coeff: Coefficients) -> NamedCocycle {
    let cochain = Cochain2::from_fn(g.order(), coeff, |_, y, z| i64::from(y == z));
    NamedCocycle { label: "deg".into(), cochain, variant: ComplexVariant::Degenerate }
}

/// `ψ(x,y,z) = (ax + b(z−y) + c)(z−y)` on `X = A = Z_n`.
pub fn ring_cocycle(n: u64, a: u64, b: u64, c: u64) -> Result<NamedCocycle> {
    if n < 2 {
        return Err(Error::Range(format!("ring cocycle needs n ≥ 2, got {n}")));
    }
    let order = usize::try_from(n).map_err(|_| Error::Range("modulus too large".into()))?;
    let coeff = Coefficients::modular(n)?;
    let (a, b, c) = ((a % n) as i128, (b % n) as i128, (c % n) as i128);
    let m = n as i128;
    let cochain = Cochain2::from_fn(order, coeff, |x, y, z| {
        let d = (z as i128 - y as i128).rem_euclid(m);
        ((a * x as i128 + b * d + c) % m * d % m) as i64
    });
    Ok(NamedCocycle { label: format!("ring({a},{b},{c})"), cochain, variant: ComplexVariant::Full })
}

/// `φ_i = Σ_x Σ_j χ_{(x, j, j+i)}` on `Z_n` with integer values, `1 ≤ i < n`.
pub fn phi(n: usize, i: usize) -> Result<NamedCocycle> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::Range(format!("phi_i needs 1 ≤ i ≤ n−1, got n = {n}, i = {i}")));
    }
    let cochain = Cochain2::from_fn(n, Coefficients::Integers, |_, y, z| i64::from(z == (y + i) % n));
    Ok(NamedCocycle { label: format!("phi_{i}"), cochain, variant: ComplexVariant::Nondegenerate })
}

/// `Σ_i a_i φ_i` on `Z_n` for coefficients `a_1, …, a_{n−1}`.
pub fn phi_combination(n: usize, coefficients: &[i64]) -> Result<NamedCocycle> {
    if n < 2 || coefficients.len() != n - 1 {
        return Err(Error::Range(format!("expected {} coefficients for n = {n}", n.saturating_sub(1))));
    }
    let cochain = Cochain2::from_fn(n, Coefficients::Integers, |_, y, z| {
        let d = (z + n - y) % n;
        if d == 0 {
            0
        } else {
            coefficients[d - 1]
        }
    });
    let label = format!("phi{coefficients:?}");
    Ok(NamedCocycle { label, cochain, variant: ComplexVariant::Nondegenerate })
}

/// `ψ_i = Σ_x Σ_j (χ_{(x, r^j, r^{j+i})} + χ_{(x, ar^{−j}, ar^{−j−i})})` on
/// `D_n` with integer values, `1 ≤ i < n`. Uses the element indexing of
/// [`FiniteGroup::dihedral`]: `r^k ↦ k`, `ar^k ↦ n + k`.
pub fn psi_dihedral(n: usize, i: usize) -> Result<NamedCocycle> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::Range(format!("psi_i needs 1 ≤ i ≤ n−1, got n = {n}, i = {i}")));
    }
    let cochain = Cochain2::from_fn(2 * n, Coefficients::Integers, |_, y, z| {
        let rotation = y < n && z < n && z == (y + i) % n;
        // (ar^{−j}, ar^{−j−i}): the second index is the first minus i.
        let reflection = y >= n && z >= n && (z - n) == (y - n + n - i) % n;
        i64::from(rotation || reflection)
    });
    Ok(NamedCocycle { label: format!("psi_{i}"), cochain, variant: ComplexVariant::Nondegenerate })
}

/// Minimal number of generators of the subgroup of `H²` (of the given
/// variant) spanned by the classes of `cocycles`.
pub fn class_rank(g: &FiniteGroup, variant: &ComplexVariant, cocycles: &[Cochain2]) -> Result<usize> {
    let Some(first) = cocycles.first() else { return Ok(0) };
    let coeff = first.coefficients();
    if cocycles.iter().any(|c| c.coefficients() != coeff || c.order() != g.order()) {
        return Err(Error::Mismatch("class_rank inputs mix groups or coefficients".into()));
    }
    Cocomplex2::new(g, coeff, variant)?.class_rank(cocycles)
}

/// Values of a cochain as `(x, y, z, value)` rows for its nonzero entries.
pub fn value_table(c: &Cochain2) -> Vec<(usize, usize, usize, BigInt)> {
    c.support().into_iter().map(|[x, y, z]| (x, y, z, c.get(x, y, z).clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_group;
    use crate::tsd_complex::{coboundary1, evaluate};

    #[test]
    fn family_values() {
        let r = ring_cocycle(4, 1, 0, 0).unwrap();
        assert_eq!(r.cochain.get(1, 0, 2), &BigInt::from(2));
        let p = phi(3, 1).unwrap();
        assert_eq!(p.cochain.get(2, 0, 1), &BigInt::from(1));
        assert_eq!(p.cochain.get(1, 0, 2), &BigInt::from(0));
        let s = psi_dihedral(3, 1).unwrap();
        // r^0 = 0, r^1 = 1, a r^0 = 3, a r^2 = 5.
        assert_eq!(s.cochain.get(4, 0, 1), &BigInt::from(1));
        assert_eq!(s.cochain.get(4, 3, 5), &BigInt::from(1));
        assert_eq!(s.cochain.get(4, 0, 3), &BigInt::from(0));
        let d = degenerate_generator(&make_group("Z2").unwrap(), Coefficients::Integers);
        assert_eq!(d.cochain.get(0, 1, 1), &BigInt::from(1));
        assert_eq!(d.cochain.get(0, 0, 1), &BigInt::from(0));
    }

    #[test]
    fn families_are_cocycles() {
        ring_cocycle(3, 0, 0, 1).unwrap().verify(&make_group("Z3").unwrap()).unwrap();
        phi(5, 3).unwrap().verify(&make_group("Z5").unwrap()).unwrap();
        psi_dihedral(4, 2).unwrap().verify(&make_group("D4").unwrap()).unwrap();
        degenerate_generator(&make_group("D3").unwrap(), Coefficients::Integers).verify(&make_group("D3").unwrap()).unwrap();
    }

    #[test]
    fn ring_cocycle_detects_even_cycle() {
        let r = ring_cocycle(2, 1, 0, 0).unwrap();
        assert_eq!(evaluate(&r.cochain, &[(1, [0, 0, 1]), (1, [1, 0, 1])]), BigInt::from(1));
    }

    #[test]
    fn class_ranks() {
        let g = make_group("Z3").unwrap();
        let v = ComplexVariant::Nondegenerate;
        let p1 = phi(3, 1).unwrap().cochain;
        let p2 = phi(3, 2).unwrap().cochain;
        assert_eq!(class_rank(&g, &v, &[p1.clone(), p2]).unwrap(), 2);
        let twice = p1.combine(2, &p1, 0).unwrap();
        assert_eq!(class_rank(&g, &v, &[p1, twice]).unwrap(), 1);
        let f: Vec<BigInt> = [1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        let cob = coboundary1(&g, &f, Coefficients::Integers).unwrap();
        assert_eq!(class_rank(&g, &ComplexVariant::Full, &[cob]).unwrap(), 0);
    }

    #[test]
    fn ranges_are_checked() {
        assert!(phi(3, 0).is_err());
        assert!(phi(3, 3).is_err());
        assert!(psi_dihedral(1, 1).is_err());
        assert!(ring_cocycle(1, 0, 0, 0).is_err());
    }
}
