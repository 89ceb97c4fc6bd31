//! Ternary self-distributive chain and cochain complexes of a group heap.
//!
//! Degree-`n` chains are indexed by `(2n−1)`-tuples of group elements, so
//! 1-chains are elements, 2-chains are triples and 3-chains are quintuples.
//! The boundary of `(x_1, …, x_{2n−1})` is
//!
//! ```text
//! Σ_{i=1}^{n−1} (−1)^i [ (…, x̂_{2i}, x̂_{2i+1}, …) − (x_1β_i, …, x_{2i−1}β_i, x_{2i+2}, …) ]
//! ```
//!
//! with `β_i = x_{2i}⁻¹ x_{2i+1}`. In degree 2 the cocycle condition reads
//!
//! ```text
//! ψ(x,y,z) − ψ(xb,yb,zb) − ψ(x,u,v) + ψ(xy⁻¹z,u,v) = 0,   b = u⁻¹v,
//! ```
//!
//! and the coboundary of a 1-cochain is `δf(x,y,z) = f(x) − f(xy⁻¹z)`.
//!
//! Every variant of the complex is described by three sets:
//! - the *support*: the triples on which degree-2 cochains may be nonzero;
//! - the *killed* triples: chains that were quotiented away (relative
//!   variants); admissible 1-cochains are those whose coboundary vanishes on
//!   them, i.e. the coboundaries that are themselves relative cochains;
//! - the *equations*: the quintuples whose cocycle equation is imposed.
//!
//! Equations keep only support terms. Every dropped term must be killed or
//! cancel inside its equation; this is checked while the system is built.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{left_cosets, CosetPartition, FiniteGroup, GroupElement, Subgroup};
use crate::linalg::{
    hermite_basis, kernel_basis_mod, lattice_coordinates, quotient_decomposition, row_echelon, solve_mod,
    AbelianGroup, IntMatrix,
};
use crate::{Error, Result};

/// Largest number of quintuples a degree-2 cocycle system may enumerate.
pub const QUINTUPLE_LIMIT: u128 = 1 << 22;

/// Largest number of chain generators a boundary matrix may index.
pub const BOUNDARY_LIMIT: u128 = 1 << 21;

/// Coefficient group of a cochain complex: `Z` or `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    /// The integers.
    Integers,
    /// The integers modulo `m ≥ 2`.
    Modular(u64),
}

impl Coefficients {
    /// `Z/m`, validating `m ≥ 2`.
    pub fn modular(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Range(format!("coefficient modulus must be at least 2, got {m}")));
        }
        Ok(Coefficients::Modular(m))
    }

    /// The modulus as a big integer (0 for `Z`).
    pub fn modulus(&self) -> BigInt {
        match self {
            Coefficients::Integers => BigInt::zero(),
            Coefficients::Modular(m) => BigInt::from(*m),
        }
    }

    /// Reduces a value into the canonical range (`[0, m)` for `Z/m`).
    pub fn reduce(&self, v: &BigInt) -> BigInt {
        match self {
            Coefficients::Integers => v.clone(),
            Coefficients::Modular(m) => v.mod_floor(&BigInt::from(*m)),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Modular(m) => write!(f, "Z{m}"),
        }
    }
}

impl core::str::FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Zm` and `Z_m` (case-insensitive `Z`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let rest = t
            .strip_prefix('Z')
            .or_else(|| t.strip_prefix('z'))
            .ok_or_else(|| Error::Range(format!("coefficients must be `Z` or `Zm`, got `{s}`")))?;
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        if rest.is_empty() {
            return Ok(Coefficients::Integers);
        }
        let m: u64 = rest.parse().map_err(|_| Error::Range(format!("bad coefficient modulus in `{s}`")))?;
        Coefficients::modular(m)
    }
}

/// Which subcomplex or quotient complex to work in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexVariant {
    /// All chains.
    Full,
    /// Chains with some paired entries equal.
    Degenerate,
    /// Chains modulo the degenerate ones.
    Nondegenerate,
    /// Nondegenerate chains whose paired entries share left `G`-cosets.
    LocalizedAt(Subgroup),
    /// Nondegenerate chains modulo the `G`-localized ones.
    RelativeTo(Subgroup),
    /// `(C^G + C^F) / C^G`; requires `G ∩ F = 1`, where it equals the
    /// `F`-localized complex.
    LocalizedIterated(Subgroup, Subgroup),
    /// Nondegenerate chains modulo the `G`- and the `F`-localized ones.
    RelativeIterated(Subgroup, Subgroup),
}

impl ComplexVariant {
    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            ComplexVariant::Full => "full",
            ComplexVariant::Degenerate => "dh",
            ComplexVariant::Nondegenerate => "ndh",
            ComplexVariant::LocalizedAt(_) => "loc",
            ComplexVariant::RelativeTo(_) => "rel",
            ComplexVariant::LocalizedIterated(..) => "loc2",
            ComplexVariant::RelativeIterated(..) => "rel2",
        }
    }

    fn subgroups(&self) -> Vec<&Subgroup> {
        match self {
            ComplexVariant::LocalizedAt(g) | ComplexVariant::RelativeTo(g) => vec![g],
            ComplexVariant::LocalizedIterated(g, f) | ComplexVariant::RelativeIterated(g, f) => vec![g, f],
            _ => Vec::new(),
        }
    }

    /// Parses `full`, `dh`, `ndh`, `loc:G=…`, `rel:G=…`, `loc2:G=…,F=…` or
    /// `rel2:G=…,F=…`, where each subgroup is given by comma-separated
    /// generator names of `g`.
    pub fn parse(text: &str, g: &FiniteGroup) -> Result<Self> {
        let t = text.trim();
        let (head, tail) = t.split_once(':').unwrap_or((t, ""));
        let bad = |why: &str| Error::Range(format!("invalid variant `{text}`: {why}"));
        let mut gens: [Option<Vec<GroupElement>>; 2] = [None, None];
        if !tail.is_empty() {
            let mut current: Option<usize> = None;
            for token in tail.split(',') {
                let token = token.trim();
                let name = if let Some(rest) = token.strip_prefix("G=") {
                    current = Some(0);
                    rest
                } else if let Some(rest) = token.strip_prefix("F=") {
                    current = Some(1);
                    rest
                } else {
                    token
                };
                let slot = current.ok_or_else(|| bad("expected `G=` or `F=`"))?;
                let list = gens[slot].get_or_insert_with(Vec::new);
                if !name.is_empty() {
                    list.push(g.parse_element(name)?);
                }
            }
        }
        let sub = |i: usize| -> Result<Subgroup> {
            let gs = gens[i].as_ref().ok_or_else(|| bad(if i == 0 { "missing G=" } else { "missing F=" }))?;
            crate::algebra::generated_subgroup(g, gs)
        };
        let expect_none = |v: ComplexVariant| {
            if gens.iter().any(Option::is_some) {
                Err(bad("this variant takes no subgroup"))
            } else {
                Ok(v)
            }
        };
        match head {
            "full" | "sd" => expect_none(ComplexVariant::Full),
            "dh" | "degenerate" => expect_none(ComplexVariant::Degenerate),
            "ndh" | "nondegenerate" => expect_none(ComplexVariant::Nondegenerate),
            "loc" => {
                if gens[1].is_some() {
                    return Err(bad("`loc` takes only G"));
                }
                Ok(ComplexVariant::LocalizedAt(sub(0)?))
            }
            "rel" => {
                if gens[1].is_some() {
                    return Err(bad("`rel` takes only G"));
                }
                Ok(ComplexVariant::RelativeTo(sub(0)?))
            }
            "loc2" => Ok(ComplexVariant::LocalizedIterated(sub(0)?, sub(1)?)),
            "rel2" => Ok(ComplexVariant::RelativeIterated(sub(0)?, sub(1)?)),
            _ => Err(bad("unknown variant")),
        }
    }
}

/// A degree-2 cochain: a value for every triple of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    order: usize,
    coeff: Coefficients,
    values: Vec<BigInt>,
}

impl Cochain2 {
    /// The zero cochain.
    pub fn zero(order: usize, coeff: Coefficients) -> Self {
        Cochain2 { order, coeff, values: vec![BigInt::zero(); order * order * order] }
    }

    /// Builds a cochain from a value function.
    pub fn from_fn(order: usize, coeff: Coefficients, mut f: impl FnMut(usize, usize, usize) -> i64) -> Self {
        let mut c = Cochain2::zero(order, coeff);
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    c.set(x, y, z, BigInt::from(f(x, y, z)));
                }
            }
        }
        c
    }

    /// Builds a cochain from a dense value vector indexed by [`triple_index`].
    pub fn from_values(order: usize, coeff: Coefficients, values: Vec<BigInt>) -> Result<Self> {
        if values.len() != order * order * order {
            return Err(Error::Mismatch(format!("expected {} values, got {}", order * order * order, values.len())));
        }
        let values = values.iter().map(|v| coeff.reduce(v)).collect();
        Ok(Cochain2 { order, coeff, values })
    }

    /// Order of the underlying group.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient group.
    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    /// Value at `(x, y, z)`.
    pub fn get(&self, x: usize, y: usize, z: usize) -> &BigInt {
        &self.values[triple_index(self.order, x, y, z)]
    }

    /// Sets the value at `(x, y, z)` (reduced into the coefficient range).
    pub fn set(&mut self, x: usize, y: usize, z: usize, v: BigInt) {
        let i = triple_index(self.order, x, y, z);
        self.values[i] = self.coeff.reduce(&v);
    }

    /// Dense values indexed by [`triple_index`].
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Triples with nonzero value, in index order.
    pub fn support(&self) -> Vec<[usize; 3]> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| triple_of(self.order, i))
            .collect()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: i64, other: &Cochain2, b: i64) -> Result<Cochain2> {
        if self.order != other.order || self.coeff != other.coeff {
            return Err(Error::Mismatch("cochains over different groups or coefficients".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| self.coeff.reduce(&(x * a + y * b)))
            .collect();
        Ok(Cochain2 { order: self.order, coeff: self.coeff, values })
    }

    /// The same integer values reinterpreted over other coefficients.
    pub fn with_coefficients(&self, coeff: Coefficients) -> Cochain2 {
        Cochain2 { order: self.order, coeff, values: self.values.iter().map(|v| coeff.reduce(v)).collect() }
    }

    /// True when every value is zero.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Index of the triple `(x, y, z)` in a dense cochain.
pub fn triple_index(order: usize, x: usize, y: usize, z: usize) -> usize {
    (x * order + y) * order + z
}

/// Inverse of [`triple_index`].
pub fn triple_of(order: usize, i: usize) -> [usize; 3] {
    [i / (order * order), (i / order) % order, i % order]
}

/// A formal integer combination of triples.
pub type Chain2 = [(i64, [usize; 3])];

/// Kronecker pairing `Σ multiplicity · ψ(triple)`, reduced in the
/// coefficient group.
pub fn evaluate(psi: &Cochain2, chain: &Chain2) -> BigInt {
    let total: BigInt = chain.iter().map(|(k, [x, y, z])| psi.get(*x, *y, *z) * *k).sum();
    psi.coeff.reduce(&total)
}

/// `δ¹f` for a 1-cochain `f: X → A` given by its values.
pub fn coboundary1(g: &FiniteGroup, f: &[BigInt], coeff: Coefficients) -> Result<Cochain2> {
    let n = g.order();
    if f.len() != n {
        return Err(Error::Mismatch(format!("1-cochain has {} values for a group of order {n}", f.len())));
    }
    let mut c = Cochain2::zero(n, coeff);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                c.set(x, y, z, &f[x] - &f[g.heap(x, y, z)]);
            }
        }
    }
    Ok(c)
}

/// Value of the cocycle expression at one quintuple.
fn cocycle_defect(g: &FiniteGroup, psi: &Cochain2, [x, y, z, u, v]: [usize; 5]) -> BigInt {
    let b = g.mul(g.inv(u), v);
    psi.get(x, y, z) - psi.get(g.mul(x, b), g.mul(y, b), g.mul(z, b)) - psi.get(x, u, v) + psi.get(g.heap(x, y, z), u, v)
}

/// Exhaustive 2-cocycle check over every quintuple of the full complex.
pub fn is_cocycle2(g: &FiniteGroup, psi: &Cochain2) -> bool {
    first_cocycle_failure(g, psi).is_none()
}

/// The first quintuple (in lexicographic order) violating the cocycle
/// condition, if any.
pub fn first_cocycle_failure(g: &FiniteGroup, psi: &Cochain2) -> Option<[usize; 5]> {
    let n = g.order();
    if psi.order != n {
        return Some([0; 5]);
    }
    let mut t = [0usize; 5];
    loop {
        if !psi.coeff.reduce(&cocycle_defect(g, psi, t)).is_zero() {
            return Some(t);
        }
        if !advance(&mut t, n) {
            return None;
        }
    }
}

/// Odometer increment of a tuple over `0..n`; false after the last tuple.
fn advance(t: &mut [usize], n: usize) -> bool {
    for k in (0..t.len()).rev() {
        t[k] += 1;
        if t[k] < n {
            return true;
        }
        t[k] = 0;
    }
    false
}

fn encode(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// The boundary of one `(2k−1)`-tuple as `(face index, coefficient)` pairs
/// in degree `k − 1`, with faces encoded in base `|X|`.
pub fn boundary_column(g: &FiniteGroup, tuple: &[usize]) -> Vec<(usize, i64)> {
    let n = g.order();
    let len = tuple.len();
    assert!(len % 2 == 1 && len >= 3, "boundary is defined on tuples of odd length ≥ 3");
    let mut out: Vec<(usize, i64)> = Vec::new();
    let mut face = Vec::with_capacity(len - 2);
    for i in 1..=(len - 1) / 2 {
        let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
        let (p, q) = (tuple[2 * i - 1], tuple[2 * i]);
        face.clear();
        face.extend(tuple[..2 * i - 1].iter().copied());
        face.extend(tuple[2 * i + 1..].iter().copied());
        out.push((encode(&face, n), sign));
        let beta = g.mul(g.inv(p), q);
        face.clear();
        face.extend(tuple[..2 * i - 1].iter().map(|&x| g.mul(x, beta)));
        face.extend(tuple[2 * i + 1..].iter().copied());
        out.push((encode(&face, n), -sign));
    }
    out.sort_unstable();
    let mut merged: Vec<(usize, i64)> = Vec::with_capacity(out.len());
    for (j, v) in out {
        match merged.last_mut() {
            Some(last) if last.0 == j => last.1 += v,
            _ => merged.push((j, v)),
        }
    }
    merged.retain(|e| e.1 != 0);
    merged
}

/// Matrix of `d_k` from `(2k−1)`-tuples (columns) to `(2k−3)`-tuples (rows),
/// for `k ∈ {2, 3, 4}`. Tuples are indexed lexicographically.
pub fn boundary_matrix(g: &FiniteGroup, degree: u32) -> Result<IntMatrix> {
    if !(2..=4).contains(&degree) {
        return Err(Error::Range(format!("boundary degree must be 2, 3 or 4, got {degree}")));
    }
    let n = g.order();
    let len = 2 * degree as usize - 1;
    let cols = (n as u128).pow(len as u32);
    if cols > BOUNDARY_LIMIT {
        return Err(Error::Budget { what: "boundary matrix columns", needed: cols, limit: BOUNDARY_LIMIT });
    }
    let rows = n.pow(len as u32 - 2);
    let mut data: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rows];
    let mut t = vec![0usize; len];
    let mut col = 0usize;
    loop {
        for (r, v) in boundary_column(g, &t) {
            data[r].push((col, v));
        }
        col += 1;
        if !advance(&mut t, n) {
            break;
        }
    }
    Ok(IntMatrix::from_sparse_rows(cols as usize, data))
}

// ---------------------------------------------------------------------------
// Variant shapes.

#[derive(Clone, Copy)]
struct PairKind {
    nondeg: bool,
    g_local: bool,
    f_local: bool,
}

struct Shape<'a> {
    variant: &'a ComplexVariant,
    g_cosets: Option<CosetPartition>,
    f_cosets: Option<CosetPartition>,
}

impl<'a> Shape<'a> {
    fn new(g: &FiniteGroup, variant: &'a ComplexVariant) -> Result<Self> {
        for s in variant.subgroups() {
            if s.owner_order() != g.order() {
                return Err(Error::Mismatch("subgroup belongs to a different group".into()));
            }
        }
        let subs = variant.subgroups();
        let g_cosets = subs.first().map(|s| left_cosets(g, s)).transpose()?;
        let f_cosets = subs.get(1).map(|s| left_cosets(g, s)).transpose()?;
        if let ComplexVariant::LocalizedIterated(gs, fs) = variant {
            let shared: Vec<_> = gs.members().iter().filter(|x| fs.contains(**x)).collect();
            if shared.len() != 1 {
                return Err(Error::Unsupported(
                    "iterated localization is implemented only when G ∩ F is trivial".into(),
                ));
            }
        }
        Ok(Shape { variant, g_cosets, f_cosets })
    }

    fn kind(&self, y: usize, z: usize) -> PairKind {
        PairKind {
            nondeg: y != z,
            g_local: self.g_cosets.as_ref().is_some_and(|c| c.same(y, z)),
            f_local: self.f_cosets.as_ref().is_some_and(|c| c.same(y, z)),
        }
    }

    fn support(&self, p: PairKind) -> bool {
        match self.variant {
            ComplexVariant::Full => true,
            ComplexVariant::Degenerate => !p.nondeg,
            ComplexVariant::Nondegenerate => p.nondeg,
            ComplexVariant::LocalizedAt(_) => p.nondeg && p.g_local,
            ComplexVariant::RelativeTo(_) => p.nondeg && !p.g_local,
            ComplexVariant::LocalizedIterated(..) => p.nondeg && p.f_local && !p.g_local,
            ComplexVariant::RelativeIterated(..) => p.nondeg && !p.g_local && !p.f_local,
        }
    }

    fn killed(&self, p: PairKind) -> bool {
        match self.variant {
            ComplexVariant::RelativeTo(_) | ComplexVariant::LocalizedIterated(..) => p.nondeg && p.g_local,
            ComplexVariant::RelativeIterated(..) => p.nondeg && (p.g_local || p.f_local),
            _ => false,
        }
    }

    fn equation(&self, a: PairKind, b: PairKind) -> bool {
        match self.variant {
            ComplexVariant::Full => true,
            ComplexVariant::Degenerate => !a.nondeg || !b.nondeg,
            ComplexVariant::Nondegenerate | ComplexVariant::RelativeTo(_) | ComplexVariant::RelativeIterated(..) => {
                a.nondeg && b.nondeg
            }
            ComplexVariant::LocalizedAt(_) => a.nondeg && b.nondeg && a.g_local && b.g_local,
            ComplexVariant::LocalizedIterated(..) => a.nondeg && b.nondeg && a.f_local && b.f_local,
        }
    }
}

// ---------------------------------------------------------------------------
// Assembled degree-2 data.

/// Result of a second-cohomology computation.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    /// Isomorphism type of `H²`.
    pub group: AbelianGroup,
    /// Isomorphism type of the cocycle group `Z²`.
    pub cocycles: AbelianGroup,
    /// Number of independent coboundary generators over `Z` (rank of `B²`
    /// as a lattice, before reduction modulo `m`).
    pub coboundary_rank: usize,
    /// One representative cocycle per cyclic summand of `H²`, with its order
    /// (0 = infinite), free summands first.
    pub representatives: Vec<(Cochain2, BigInt)>,
}

/// Degree-2 cochain data of one variant: support, cocycle equations and
/// coboundary generators, ready for cohomology queries.
#[derive(Debug, Clone)]
pub struct Cocomplex2 {
    order: usize,
    coeff: Coefficients,
    variant: ComplexVariant,
    support: Vec<usize>,
    position: Vec<Option<usize>>,
    equations: IntMatrix,
    coboundary_map: IntMatrix,
    killed_map: IntMatrix,
}

impl Cocomplex2 {
    /// Assembles the cocycle system and coboundary maps.
    pub fn new(g: &FiniteGroup, coeff: Coefficients, variant: &ComplexVariant) -> Result<Self> {
        let n = g.order();
        let quintuples = (n as u128).pow(5);
        if quintuples > QUINTUPLE_LIMIT {
            return Err(Error::Budget { what: "cocycle equations", needed: quintuples, limit: QUINTUPLE_LIMIT });
        }
        let shape = Shape::new(g, variant)?;
        let kinds: Vec<PairKind> = (0..n * n).map(|i| shape.kind(i / n, i % n)).collect();
        let kind = |y: usize, z: usize| kinds[y * n + z];

        let mut support = Vec::new();
        let mut position = vec![None; n * n * n];
        let mut killed = vec![false; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = triple_index(n, x, y, z);
                    if shape.support(kind(y, z)) {
                        position[t] = Some(support.len());
                        support.push(t);
                    }
                    killed[t] = shape.killed(kind(y, z));
                }
            }
        }

        let mut rows: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
        let mut terms: Vec<(usize, i64)> = Vec::with_capacity(4);
        let mut dropped: Vec<(usize, i64)> = Vec::with_capacity(4);
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        if !shape.equation(kind(y, z), kind(u, v)) {
                            continue;
                        }
                        let b = g.mul(g.inv(u), v);
                        for x in 0..n {
                            let quad = [
                                (triple_index(n, x, y, z), 1),
                                (triple_index(n, g.mul(x, b), g.mul(y, b), g.mul(z, b)), -1),
                                (triple_index(n, x, u, v), -1),
                                (triple_index(n, g.heap(x, y, z), u, v), 1),
                            ];
                            terms.clear();
                            dropped.clear();
                            for (t, s) in quad {
                                match position[t] {
                                    Some(p) => terms.push((p, s)),
                                    None => dropped.push((t, s)),
                                }
                            }
                            check_dropped(&mut dropped, &killed, n, [x, y, z, u, v])?;
                            if let Some(row) = normalize_row(&mut terms) {
                                rows.insert(row);
                            }
                        }
                    }
                }
            }
        }
        let raw = IntMatrix::from_sparse_rows(support.len(), rows.into_iter().collect());
        let equations = row_echelon(&raw);

        let delta_row = |t: usize| -> Vec<(usize, i64)> {
            let [x, y, z] = triple_of(n, t);
            vec![(x, 1), (g.heap(x, y, z), -1)]
        };
        let coboundary_map =
            IntMatrix::from_sparse_rows(n, support.iter().map(|&t| delta_row(t)).collect::<Vec<_>>());
        let killed_rows: Vec<Vec<(usize, i64)>> =
            (0..n * n * n).filter(|&t| killed[t]).map(delta_row).collect();
        let killed_map = IntMatrix::from_sparse_rows(n, killed_rows);

        Ok(Cocomplex2 {
            order: n,
            coeff,
            variant: variant.clone(),
            support,
            position,
            equations,
            coboundary_map,
            killed_map,
        })
    }

    /// The variant.
    pub fn variant(&self) -> &ComplexVariant {
        &self.variant
    }

    /// Coefficients.
    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    /// Number of triples in the support.
    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    /// The support triples in index order.
    pub fn support(&self) -> Vec<[usize; 3]> {
        self.support.iter().map(|&t| triple_of(self.order, t)).collect()
    }

    /// Echelon basis of the row lattice of the cocycle equations.
    pub fn equations(&self) -> &IntMatrix {
        &self.equations
    }

    /// Matrix of `δ¹` restricted to the support (rows: support triples).
    pub fn coboundary_map(&self) -> &IntMatrix {
        &self.coboundary_map
    }

    /// Basis (support coordinates) of the cocycle lattice
    /// `{c : E·c ≡ 0 (mod m)}`.
    pub fn cocycle_lattice(&self) -> Vec<Vec<BigInt>> {
        if self.support.is_empty() {
            return Vec::new();
        }
        kernel_basis_mod(&self.equations, &self.coeff.modulus())
    }

    /// Admissible 1-cochains: those whose coboundary vanishes (mod `m`) on the
    /// killed triples.
    pub fn admissible_one_cochains(&self) -> Vec<Vec<BigInt>> {
        if self.killed_map.rows() == 0 {
            return hermite_basis(self.order, &identity_rows(self.order));
        }
        kernel_basis_mod(&self.killed_map, &self.coeff.modulus())
    }

    /// Coboundaries of the admissible 1-cochains, in support coordinates.
    pub fn coboundary_generators(&self) -> Vec<Vec<BigInt>> {
        self.admissible_one_cochains()
            .iter()
            .map(|f| self.coboundary_map.mul_vec(f))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Restricts a cochain to support coordinates; fails if it is nonzero
    /// off the support.
    pub fn restrict(&self, psi: &Cochain2) -> Result<Vec<BigInt>> {
        if psi.order != self.order || psi.coeff != self.coeff {
            return Err(Error::Mismatch("cochain from a different group or coefficient ring".into()));
        }
        for (t, v) in psi.values.iter().enumerate() {
            if self.position[t].is_none() && !v.is_zero() {
                let [x, y, z] = triple_of(self.order, t);
                return Err(Error::Mismatch(format!(
                    "cochain is nonzero at ({x},{y},{z}), outside the {} complex",
                    self.variant.tag()
                )));
            }
        }
        Ok(self.support.iter().map(|&t| psi.values[t].clone()).collect())
    }

    /// Extends support coordinates to a dense cochain (zero elsewhere).
    pub fn extend(&self, coords: &[BigInt]) -> Cochain2 {
        let mut c = Cochain2::zero(self.order, self.coeff);
        for (&t, v) in self.support.iter().zip(coords) {
            c.values[t] = self.coeff.reduce(v);
        }
        c
    }

    /// True when the cochain lives on the support and satisfies every
    /// equation of the variant.
    pub fn is_cocycle(&self, psi: &Cochain2) -> bool {
        let Ok(v) = self.restrict(psi) else { return false };
        self.equations.mul_vec(&v).iter().all(|x| self.coeff.reduce(x).is_zero())
    }

    /// A 1-cochain `f` with `δf = ψ` within the variant, or `None`.
    pub fn coboundary_witness(&self, psi: &Cochain2) -> Result<Option<Vec<BigInt>>> {
        let target = self.restrict(psi)?;
        let mut stacked = IntMatrix::zeros(0, self.order);
        for i in 0..self.coboundary_map.rows() {
            stacked.push_row(self.coboundary_map.row(i).to_vec());
        }
        for i in 0..self.killed_map.rows() {
            stacked.push_row(self.killed_map.row(i).to_vec());
        }
        let mut rhs = target;
        rhs.resize(stacked.rows(), BigInt::zero());
        Ok(solve_mod(&stacked, &rhs, &self.coeff.modulus()))
    }

    fn null_generators(&self) -> Vec<Vec<BigInt>> {
        let mut gens = self.coboundary_generators();
        let m = self.coeff.modulus();
        if !m.is_zero() {
            for i in 0..self.support.len() {
                let mut e = vec![BigInt::zero(); self.support.len()];
                e[i] = m.clone();
                gens.push(e);
            }
        }
        gens
    }

    /// Second cohomology of the variant.
    pub fn cohomology(&self) -> Result<CohomologyResult> {
        let basis = self.cocycle_lattice();
        let m = self.coeff.modulus();
        let boundaries = self.coboundary_generators();
        let coboundary_rank = if boundaries.is_empty() {
            0
        } else {
            row_echelon(&IntMatrix::from_dense_big(self.support.len(), &boundaries)).rows()
        };
        let cocycles = quotient_decomposition(&basis, &[], &m)?.group;
        let q = quotient_decomposition(&basis, &boundaries, &m)?;
        let representatives = q.generators.iter().map(|(v, ord)| (self.extend(v), ord.clone())).collect();
        Ok(CohomologyResult { group: q.group, cocycles, coboundary_rank, representatives })
    }

    /// Minimal number of generators of the subgroup of `H²` spanned by the
    /// classes of the given cocycles.
    pub fn class_rank(&self, cocycles: &[Cochain2]) -> Result<usize> {
        let mut vectors = Vec::with_capacity(cocycles.len());
        for c in cocycles {
            if !self.is_cocycle(c) {
                return Err(Error::NotACocycle(format!("class_rank input is not a cocycle of the {} complex", self.variant.tag())));
            }
            vectors.push(self.restrict(c)?);
        }
        let null = self.null_generators();
        let mut all = vectors;
        all.extend(null.iter().cloned());
        let all: Vec<Vec<BigInt>> = all.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if all.is_empty() {
            return Ok(0);
        }
        let span = hermite_basis(self.support.len(), &all);
        Ok(quotient_decomposition(&span, &null, &BigInt::zero())?.group.generator_count())
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn check_dropped(dropped: &mut [(usize, i64)], killed: &[bool], n: usize, q: [usize; 5]) -> Result<()> {
    if dropped.is_empty() {
        return Ok(());
    }
    dropped.sort_unstable();
    let mut i = 0;
    while i < dropped.len() {
        let t = dropped[i].0;
        let mut net = 0;
        while i < dropped.len() && dropped[i].0 == t {
            net += dropped[i].1;
            i += 1;
        }
        if net != 0 && !killed[t] {
            let [x, y, z] = triple_of(n, t);
            return Err(Error::BrokenComplex(format!(
                "equation at {q:?} reaches ({x},{y},{z}), which is neither supported nor killed"
            )));
        }
    }
    Ok(())
}

/// Merges duplicate columns and fixes the sign so that the first entry is
/// positive; `None` for an all-zero row.
fn normalize_row(terms: &mut Vec<(usize, i64)>) -> Option<Vec<(usize, i64)>> {
    terms.sort_unstable();
    let mut row: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
    for &(j, v) in terms.iter() {
        match row.last_mut() {
            Some(last) if last.0 == j => last.1 += v,
            _ => row.push((j, v)),
        }
    }
    row.retain(|e| e.1 != 0);
    let first = row.first()?.1;
    if first < 0 {
        for e in row.iter_mut() {
            e.1 = -e.1;
        }
    }
    Some(row)
}

/// Basis of the cocycle group of a variant, as dense cochains. Over `Z` this
/// is a lattice basis; over `Z/m` it is one generator per cyclic summand of
/// `Z²`.
pub fn cocycle_basis2(g: &FiniteGroup, coeff: Coefficients, variant: &ComplexVariant) -> Result<Vec<Cochain2>> {
    let cx = Cocomplex2::new(g, coeff, variant)?;
    let basis = cx.cocycle_lattice();
    match coeff {
        Coefficients::Integers => Ok(basis.iter().map(|v| cx.extend(v)).collect()),
        Coefficients::Modular(_) => {
            let q = quotient_decomposition(&basis, &[], &coeff.modulus())?;
            Ok(q.generators.iter().map(|(v, _)| cx.extend(v)).collect())
        }
    }
}

/// Second cohomology `H²` of a variant.
pub fn second_cohomology(g: &FiniteGroup, coeff: Coefficients, variant: &ComplexVariant) -> Result<CohomologyResult> {
    Cocomplex2::new(g, coeff, variant)?.cohomology()
}

/// A witness `f` with `δf = ψ` in the given variant, or `None` if `ψ` is not
/// a coboundary there.
pub fn is_coboundary(g: &FiniteGroup, psi: &Cochain2, variant: &ComplexVariant) -> Result<Option<Vec<BigInt>>> {
    Cocomplex2::new(g, psi.coeff, variant)?.coboundary_witness(psi)
}

/// Checks that a lattice of cochains only contains coboundaries modulo the
/// given basis; helper for tests of representative independence.
pub fn lattice_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    lattice_coordinates(basis, &[v.to_vec()]).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_group;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn degree_two_boundary_matches_the_coboundary_formula() {
        let g = make_group("Z2").unwrap();
        let d = boundary_matrix(&g, 2).unwrap();
        // Column (0,0,1) = index 1: −(0) + (1).
        assert_eq!(d.get(0, 1), b(-1));
        assert_eq!(d.get(1, 1), b(1));
        // Columns (x,y,y) vanish.
        for x in 0..2 {
            for y in 0..2 {
                let c = triple_index(2, x, y, y);
                assert!((0..2).all(|r| d.get(r, c).is_zero()));
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero_on_z2() {
        let g = make_group("Z2").unwrap();
        let d2 = boundary_matrix(&g, 2).unwrap();
        let d3 = boundary_matrix(&g, 3).unwrap();
        assert!(d2.mul(&d3).unwrap().is_zero());
    }

    #[test]
    fn z2_full_cohomology() {
        let g = make_group("Z2").unwrap();
        let r = second_cohomology(&g, Coefficients::Modular(2), &ComplexVariant::Full).unwrap();
        assert_eq!(r.group.torsion, vec![b(2), b(2)]);
        assert_eq!(r.cocycles.torsion, vec![b(2), b(2), b(2)]);
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("Z_5".parse::<Coefficients>().unwrap(), Coefficients::Modular(5));
        assert_eq!("Z3".parse::<Coefficients>().unwrap(), Coefficients::Modular(3));
        assert!("Z1".parse::<Coefficients>().is_err());
        assert!("Q".parse::<Coefficients>().is_err());
    }

    #[test]
    fn variant_parsing() {
        let g = make_group("D3").unwrap();
        assert_eq!(ComplexVariant::parse("ndh", &g).unwrap(), ComplexVariant::Nondegenerate);
        match ComplexVariant::parse("rel2:G=a,F=r", &g).unwrap() {
            ComplexVariant::RelativeIterated(a, f) => {
                assert_eq!(a.len(), 2);
                assert_eq!(f.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ComplexVariant::parse("rel", &g).is_err());
        assert!(ComplexVariant::parse("full:G=a", &g).is_err());
        assert!(ComplexVariant::parse("bogus", &g).is_err());
    }

    #[test]
    fn coboundary_witness_and_evaluation() {
        let g = make_group("Z2").unwrap();
        let f = vec![b(1), b(0)];
        let c = coboundary1(&g, &f, Coefficients::Integers).unwrap();
        assert!(is_cocycle2(&g, &c));
        assert!(is_coboundary(&g, &c, &ComplexVariant::Full).unwrap().is_some());
        let zero = Cochain2::zero(2, Coefficients::Integers);
        assert_eq!(is_coboundary(&g, &zero, &ComplexVariant::Full).unwrap(), Some(vec![b(0), b(0)]));
        assert_eq!(evaluate(&zero, &[]), b(0));
    }

    #[test]
    fn iterated_localization_requires_trivial_intersection() {
        let g = make_group("Z4").unwrap();
        let v = ComplexVariant::parse("loc2:G=2,F=2", &g).unwrap();
        assert!(matches!(Cocomplex2::new(&g, Coefficients::Integers, &v), Err(Error::Unsupported(_))));
    }
}
