//! Textual cocycle family specifications.
//!
//! - `deg`: the degenerate generator `Σ χ_{(x,y,y)}`;
//! - `ring:a,b,c`: `(ax + b(z−y) + c)(z−y)` on `Z_n` with values in `Z_n`;
//! - `phi:i`: `φ_i` on `Z_n`;
//! - `phisum:a_1,…,a_{n−1}`: `Σ a_i φ_i` on `Z_n`;
//! - `psi:i`: `ψ_i` on `D_n`.

use heapknot_core::algebra::FiniteGroup;
use heapknot_core::cocycle_lib::{degenerate_generator, phi, phi_combination, psi_dihedral, ring_cocycle, NamedCocycle};
use heapknot_core::tsd_complex::Coefficients;

/// A parsed family specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Degenerate generator.
    Degenerate,
    /// Ring cocycle with parameters `(a, b, c)`.
    Ring(u64, u64, u64),
    /// `φ_i`.
    Phi(usize),
    /// `Σ a_i φ_i`.
    PhiSum(Vec<i64>),
    /// `ψ_i`.
    Psi(usize),
}

fn numbers<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("bad number `{}` in `{text}`", t.trim())))
        .collect()
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let (head, args) = text.trim().split_once(':').unwrap_or((text.trim(), ""));
        match head {
            "deg" => Ok(Family::Degenerate),
            "ring" => match numbers::<u64>(args)?.as_slice() {
                [a, b, c] => Ok(Family::Ring(*a, *b, *c)),
                _ => Err("ring needs three parameters, e.g. ring:1,0,0".into()),
            },
            "phi" => Ok(Family::Phi(args.trim().parse().map_err(|_| format!("bad index in `{text}`"))?)),
            "phisum" => Ok(Family::PhiSum(numbers(args)?)),
            "psi" => Ok(Family::Psi(args.trim().parse().map_err(|_| format!("bad index in `{text}`"))?)),
            _ => Err(format!("unknown cocycle family `{text}` (expected deg, ring, phi, phisum or psi)")),
        }
    }
}

fn cyclic_order(g: &FiniteGroup) -> Result<usize, String> {
    let spec = g.spec();
    if spec.starts_with('Z') && !spec.contains('x') {
        Ok(g.order())
    } else {
        Err(format!("this family needs a cyclic group Z<n>, got {spec}"))
    }
}

fn dihedral_degree(g: &FiniteGroup) -> Result<usize, String> {
    let spec = g.spec();
    if spec.starts_with('D') && !spec.contains('x') {
        Ok(g.order() / 2)
    } else {
        Err(format!("psi needs a dihedral group D<n>, got {spec}"))
    }
}

/// Builds the cocycle on `g`. `coeff` overrides the family's natural
/// coefficients (`Z` for `deg`, `phi`, `psi`; `Z_n` for `ring`).
pub fn build(family: &Family, g: &FiniteGroup, coeff: Option<Coefficients>) -> Result<NamedCocycle, String> {
    let err = |e: heapknot_core::Error| e.to_string();
    let mut named = match family {
        Family::Degenerate => degenerate_generator(g, coeff.unwrap_or(Coefficients::Integers)),
        Family::Ring(a, b, c) => ring_cocycle(cyclic_order(g)? as u64, *a, *b, *c).map_err(err)?,
        Family::Phi(i) => phi(cyclic_order(g)?, *i).map_err(err)?,
        Family::PhiSum(a) => phi_combination(cyclic_order(g)?, a).map_err(err)?,
        Family::Psi(i) => psi_dihedral(dihedral_degree(g)?, *i).map_err(err)?,
    };
    if let Some(c) = coeff {
        named.cochain = named.cochain.with_coefficients(c);
    }
    Ok(named)
}
