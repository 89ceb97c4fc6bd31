//! Finite groups given by multiplication tables, the group heap operation
//! `[x,y,z] = x·y⁻¹·z`, subgroups and left-coset partitions.
//!
//! Elements are dense indices `0..order`. Every group is fully tabulated on
//! construction so that multiplication, inversion and the heap operation are
//! table lookups in the enumeration hot paths.
//!
//! Group specifications follow the grammar
//!
//! ```text
//! spec   := factor ( 'x' factor )*
//! factor := 'Z' n        cyclic group of order n, elements "0".."n-1"
//!         | 'D' n        dihedral group ⟨a, r | a² = rⁿ = 1, ara = r⁻¹⟩ of
//!                        order 2n, elements "r0".."r{n-1}", "ar0".."ar{n-1}"
//! ```
//!
//! A product `AxB` orders its elements lexicographically by factor index
//! and names them `(a,b)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Index of an element inside its owning [`FiniteGroup`].
pub type GroupElement = usize;

/// A finite group stored as a full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    names: Vec<String>,
    spec: String,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table and element names.
    ///
    /// The table is validated: closure, associativity (exhaustively), a
    /// two-sided identity, inverses, and unique names.
    pub fn from_table(mul: Vec<Vec<usize>>, names: Vec<String>, spec: &str) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if names.len() != order {
            return Err(Error::NotAGroup("one name per element required".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &mul {
            if row.len() != order {
                return Err(Error::NotAGroup("table is not square".into()));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::NotAGroup(format!("entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| flat[e * order + x] == x && flat[x * order + e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| flat[x * order + y] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
            if flat[y * order + x] != identity {
                return Err(Error::NotAGroup(format!("element {x} has no two-sided inverse")));
            }
            inv[x] = y;
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != order {
            return Err(Error::NotAGroup("element names must be unique".into()));
        }
        let g = FiniteGroup { order, mul: flat, inv, identity, names, spec: spec.into() };
        if !g.is_associative() {
            return Err(Error::NotAGroup("multiplication is not associative".into()));
        }
        Ok(g)
    }

    /// The cyclic group `Z_n`, written additively with elements `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::GroupSpec { spec: format!("Z{n}"), reason: "n must be at least 1".into() });
        }
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|a| a.to_string()).collect();
        Self::from_table(mul, names, &format!("Z{n}"))
    }

    /// The dihedral group `D_n` of order `2n`.
    ///
    /// Index `k < n` is `r^k`, index `n + k` is `a·r^k`; multiplication is
    /// `a^s r^k · a^t r^l = a^(s+t) r^((-1)^t k + l)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::GroupSpec { spec: format!("D{n}"), reason: "n must be at least 1".into() });
        }
        let split = |i: usize| (i / n, i % n);
        let mul = (0..2 * n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        let (s, k) = split(i);
                        let (t, l) = split(j);
                        let k = if t == 1 { (n - k) % n } else { k };
                        ((s + t) % 2) * n + (k + l) % n
                    })
                    .collect()
            })
            .collect();
        let names = (0..n).map(|k| format!("r{k}")).chain((0..n).map(|k| format!("ar{k}"))).collect();
        Self::from_table(mul, names, &format!("D{n}"))
    }

    /// Direct product of several groups, elements in lexicographic order of
    /// factor indices (first factor most significant).
    pub fn direct_product(factors: &[FiniteGroup]) -> Result<Self> {
        match factors {
            [] => Err(Error::GroupSpec { spec: String::new(), reason: "empty product".into() }),
            [g] => Ok(g.clone()),
            _ => {
                let order: usize = factors.iter().map(|g| g.order).product();
                let digits = |mut i: usize| {
                    let mut d = vec![0; factors.len()];
                    for (slot, g) in d.iter_mut().zip(factors).rev() {
                        *slot = i % g.order;
                        i /= g.order;
                    }
                    d
                };
                let index = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, g)| acc * g.order + x);
                let mul = (0..order)
                    .map(|i| {
                        let a = digits(i);
                        (0..order)
                            .map(|j| {
                                let b = digits(j);
                                let c: Vec<usize> =
                                    factors.iter().enumerate().map(|(f, g)| g.mul(a[f], b[f])).collect();
                                index(&c)
                            })
                            .collect()
                    })
                    .collect();
                let names = (0..order)
                    .map(|i| {
                        let parts: Vec<&str> =
                            digits(i).iter().zip(factors).map(|(&x, g)| g.names[x].as_str()).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect();
                let spec: Vec<&str> = factors.iter().map(|g| g.spec.as_str()).collect();
                Self::from_table(mul, names, &spec.join("x"))
            }
        }
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Index of the identity element.
    pub fn identity(&self) -> GroupElement {
        self.identity
    }

    /// Product `a·b`.
    #[inline]
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.mul[a * self.order + b]
    }

    /// Inverse `a⁻¹`.
    #[inline]
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        self.inv[a]
    }

    /// The heap operation `[x,y,z] = x·y⁻¹·z`.
    #[inline]
    pub fn heap(&self, x: GroupElement, y: GroupElement, z: GroupElement) -> GroupElement {
        self.mul(self.mul(x, self.inv(y)), z)
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: GroupElement) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Display name of an element.
    pub fn name(&self, x: GroupElement) -> &str {
        &self.names[x]
    }

    /// All element names in index order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The specification string the group was built from.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    /// The multiplication table as rows.
    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Checks that `x` is a valid element index.
    pub fn check(&self, x: GroupElement) -> Result<GroupElement> {
        if x < self.order {
            Ok(x)
        } else {
            Err(Error::ElementRange { index: x, order: self.order })
        }
    }

    /// Resolves an element from its name.
    ///
    /// Besides canonical names this accepts, for dihedral groups, the aliases
    /// `1`/`e` (identity), `r`, `a`, `rk` and `ark`; and `#i` for a raw index.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t = text.trim();
        if let Some(pos) = self.names.iter().position(|n| n == t) {
            return Ok(pos);
        }
        if let Some(idx) = t.strip_prefix('#') {
            let i: usize = idx.parse().map_err(|_| Error::Range(format!("bad element `{text}`")))?;
            return self.check(i);
        }
        if self.spec.starts_with('D') && !self.spec.contains('x') {
            let n = self.order / 2;
            let alias = match t {
                "1" | "e" => Some(0),
                "r" => Some(1 % n),
                "a" => Some(n),
                _ => None,
            };
            if let Some(i) = alias {
                return Ok(i);
            }
        }
        Err(Error::Range(format!("unknown element `{text}` in {}", self.spec)))
    }

    /// Exhaustive associativity check (cubic in the order).
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }
}

impl core::str::FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        make_group(s)
    }
}

/// Parses a group specification (`Z<n>`, `D<n>`, products joined by `x`).
pub fn make_group(spec: &str) -> Result<FiniteGroup> {
    let bad = |reason: &str| Error::GroupSpec { spec: spec.into(), reason: reason.into() };
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty spec"));
    }
    let mut factors = Vec::new();
    for part in compact.split(['x', '×']) {
        let mut chars = part.chars();
        let kind = chars.next().ok_or_else(|| bad("empty factor"))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("expected Z<n> or D<n>"));
        }
        let n: usize = digits.parse().map_err(|_| bad("number too large"))?;
        if n < 1 {
            return Err(bad("n must be at least 1"));
        }
        if n > 4096 {
            return Err(bad("group too large for tabulation"));
        }
        factors.push(match kind {
            'Z' | 'z' => FiniteGroup::cyclic(n)?,
            'D' | 'd' => FiniteGroup::dihedral(n)?,
            _ => return Err(bad("expected Z<n> or D<n>")),
        });
    }
    let g = FiniteGroup::direct_product(&factors)?;
    Ok(FiniteGroup { spec: compact, ..g })
}

/// Free function form of [`FiniteGroup::heap`], with range checking.
pub fn heap(g: &FiniteGroup, x: GroupElement, y: GroupElement, z: GroupElement) -> Result<GroupElement> {
    Ok(g.heap(g.check(x)?, g.check(y)?, g.check(z)?))
}

/// A subgroup, stored as the sorted list of its member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    owner_order: usize,
    members: Vec<GroupElement>,
}

impl Subgroup {
    /// Validates `members` as a subgroup of `g`.
    pub fn new(g: &FiniteGroup, members: &[GroupElement]) -> Result<Self> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        for &x in &set {
            g.check(x)?;
        }
        if !set.contains(&g.identity()) {
            return Err(Error::Range("subgroup must contain the identity".into()));
        }
        for &x in &set {
            if !set.contains(&g.inv(x)) || set.iter().any(|&y| !set.contains(&g.mul(x, y))) {
                return Err(Error::Range("member set is not closed".into()));
            }
        }
        Ok(Subgroup { owner_order: g.order(), members: set.into_iter().collect() })
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: a subgroup contains the identity.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, x: GroupElement) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Order of the owning group.
    pub fn owner_order(&self) -> usize {
        self.owner_order
    }
}

/// The smallest subgroup of `g` containing `gens`.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[GroupElement]) -> Result<Subgroup> {
    for &x in gens {
        g.check(x)?;
    }
    let mut seen = vec![false; g.order()];
    let mut stack = vec![g.identity()];
    seen[g.identity()] = true;
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let members: Vec<usize> = (0..g.order()).filter(|&x| seen[x]).collect();
    Ok(Subgroup { owner_order: g.order(), members })
}

/// A partition of the group into left cosets `xH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    coset_of: Vec<usize>,
    coset_count: usize,
}

impl CosetPartition {
    /// Coset id of `x`; ids are numbered by their smallest element.
    #[inline]
    pub fn coset_of(&self, x: GroupElement) -> usize {
        self.coset_of[x]
    }

    /// Number of cosets.
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    /// True when `x` and `y` lie in the same coset.
    #[inline]
    pub fn same(&self, x: GroupElement, y: GroupElement) -> bool {
        self.coset_of[x] == self.coset_of[y]
    }

    /// The cosets as sorted member lists.
    pub fn cosets(&self) -> Vec<Vec<GroupElement>> {
        let mut out = vec![Vec::new(); self.coset_count];
        for (x, &c) in self.coset_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

/// Left-coset partition of `g` by `h`: `x ~ y` iff `x⁻¹y ∈ h`.
pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> Result<CosetPartition> {
    if h.owner_order() != g.order() {
        return Err(Error::Mismatch("subgroup belongs to a different group".into()));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &m in h.members() {
            coset_of[g.mul(x, m)] = count;
        }
        count += 1;
    }
    Ok(CosetPartition { coset_of, coset_count: count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_build_expected_groups() {
        let z4 = make_group("Z4").unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.mul(3, 2), 1);
        let d3 = make_group("D3").unwrap();
        assert_eq!(d3.order(), 6);
        let a = d3.parse_element("a").unwrap();
        let r = d3.parse_element("r").unwrap();
        assert_eq!(d3.mul(a, a), d3.identity());
        assert_eq!(d3.pow(r, 3), d3.identity());
        assert_eq!(d3.mul(d3.mul(a, r), a), d3.inv(r));
        let klein = make_group("Z2xZ2").unwrap();
        assert_eq!(klein.order(), 4);
        assert!((1..4).all(|x| klein.element_order(x) == 2));
        assert_eq!(klein.names()[1], "(0,1)");
    }

    #[test]
    fn malformed_specs_are_rejected() {
        for bad in ["", "Z0", "Q8", "Z", "Zx", "D-1", "Z2xx"] {
            assert!(make_group(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn heap_examples() {
        let z5 = make_group("Z5").unwrap();
        assert_eq!(heap(&z5, 1, 3, 4).unwrap(), 2);
        let d3 = make_group("D3").unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(d3.heap(x, x, y), y);
                assert_eq!(d3.heap(x, y, y), x);
            }
        }
        assert!(heap(&z5, 5, 0, 0).is_err());
    }

    #[test]
    fn subgroups_and_cosets() {
        let d3 = make_group("D3").unwrap();
        let a = d3.parse_element("a").unwrap();
        let r = d3.parse_element("r").unwrap();
        let g = generated_subgroup(&d3, &[a]).unwrap();
        assert_eq!(g.members(), &[0, a]);
        let f = generated_subgroup(&d3, &[r]).unwrap();
        assert_eq!(f.members(), &[0, 1, 2]);
        let cos = left_cosets(&d3, &g).unwrap();
        assert_eq!(cos.coset_count(), 3);
        assert!(cos.same(0, a));
        let z4 = make_group("Z4").unwrap();
        let h = generated_subgroup(&z4, &[2]).unwrap();
        assert_eq!(left_cosets(&z4, &h).unwrap().cosets(), vec![vec![0, 2], vec![1, 3]]);
        let whole = generated_subgroup(&z4, &[1]).unwrap();
        assert_eq!(left_cosets(&z4, &whole).unwrap().coset_count(), 1);
    }
}
