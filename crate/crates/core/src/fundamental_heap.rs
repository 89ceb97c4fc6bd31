//! Fundamental heap presentations of framed braid closures.
//!
//! Symbolic propagation runs the coloring maps over the free group on the
//! top labels `x_i, y_i`. Closing the braid yields relators
//! `bottom · top⁻¹`. Substituting `y_i = x_i α_i` and eliminating the
//! `x`'s splits off a free factor of rank equal to the number of
//! components; the rest is a presentation in the `α`'s alone.
//!
//! Also: Tietze simplification, abelianization, and homomorphism checks into
//! finite groups and into groups given by power laws `w^k = 1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::{generated_subgroup, FiniteGroup, GroupElement};
use crate::coloring::{cross_negative, cross_positive, kink, GroupOps, Pair};
use crate::link_model::FramedLink;
use crate::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::{Error, Result};

/// Generator index inside a presentation.
pub type Symbol = usize;

/// A freely reduced word, run-length encoded as `(symbol, exponent)` with
/// adjacent symbols distinct and exponents nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    runs: Vec<(Symbol, i64)>,
}

impl FreeWord {
    /// The empty word.
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// A single generator.
    pub fn generator(s: Symbol) -> Self {
        FreeWord { runs: vec![(s, 1)] }
    }

    /// `s^e`.
    pub fn power_of(s: Symbol, e: i64) -> Self {
        let mut w = FreeWord::identity();
        w.push(s, e);
        w
    }

    /// Builds a reduced word from arbitrary `(symbol, exponent)` runs.
    pub fn from_runs(runs: &[(Symbol, i64)]) -> Self {
        let mut w = FreeWord::identity();
        for &(s, e) in runs {
            w.push(s, e);
        }
        w
    }

    /// Appends `s^e`, reducing at the junction.
    pub fn push(&mut self, s: Symbol, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.0 == s {
                last.1 += e;
                if last.1 == 0 {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push((s, e));
    }

    /// The runs.
    pub fn runs(&self) -> &[(Symbol, i64)] {
        &self.runs
    }

    /// Letters `(symbol, ±1)` in order.
    pub fn letters(&self) -> Vec<(Symbol, i8)> {
        let mut out = Vec::with_capacity(self.len());
        for &(s, e) in &self.runs {
            let sign = if e > 0 { 1 } else { -1 };
            out.extend(core::iter::repeat_n((s, sign), e.unsigned_abs() as usize));
        }
        out
    }

    /// Word length (number of letters).
    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.1.unsigned_abs() as usize).sum()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(s, e) in &other.runs {
            w.push(s, e);
        }
        w
    }

    /// Inverse word.
    pub fn inverse(&self) -> FreeWord {
        FreeWord { runs: self.runs.iter().rev().map(|&(s, e)| (s, -e)).collect() }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Exponent sum of a symbol.
    pub fn exponent_sum(&self, s: Symbol) -> i64 {
        self.runs.iter().filter(|r| r.0 == s).map(|r| r.1).sum()
    }

    /// Number of letters equal to `s^{±1}`.
    pub fn occurrences(&self, s: Symbol) -> u64 {
        self.runs.iter().filter(|r| r.0 == s).map(|r| r.1.unsigned_abs()).sum()
    }

    /// Symbols present in the word.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.runs.iter().map(|r| r.0).collect()
    }

    /// Replaces every generator by a word.
    pub fn substitute(&self, f: &impl Fn(Symbol) -> FreeWord) -> FreeWord {
        let mut w = FreeWord::identity();
        for &(s, e) in &self.runs {
            w = w.mul(&f(s).pow(e));
        }
        w
    }

    /// Cyclic reduction: strips cancelling ends and merges equal end symbols
    /// (a conjugate of the input).
    pub fn cyclically_reduced(&self) -> FreeWord {
        let mut runs = self.runs.clone();
        while runs.len() >= 2 && runs[0].0 == runs[runs.len() - 1].0 {
            let (s, e) = runs.pop().expect("nonempty");
            runs[0].1 += e;
            if runs[0].1 == 0 {
                runs.remove(0);
            }
            let _ = s;
        }
        FreeWord { runs }
    }

    /// Canonical representative up to cyclic permutation and inversion: the
    /// lexicographically smallest letter sequence among all rotations of the
    /// cyclic reduction and of its inverse.
    pub fn canonical_cyclic(&self) -> Vec<(Symbol, i8)> {
        let base = self.cyclically_reduced();
        let mut best: Option<Vec<(Symbol, i8)>> = None;
        for w in [base.clone(), base.inverse()] {
            let letters = w.letters();
            for r in 0..letters.len().max(1) {
                let mut rot = letters.clone();
                rot.rotate_left(r.min(letters.len()));
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Renders the word with generator names, e.g. `a1^-2 a2 a1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.runs.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(s, e)| {
                let n = names.get(s).cloned().unwrap_or_else(|| format!("#{s}"));
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses a word over `names`: atoms are generator names or
    /// parenthesised words, each optionally raised to `^k`; atoms are
    /// separated by whitespace, `*` or `.`.
    pub fn parse(text: &str, names: &[String]) -> Result<FreeWord> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let w = parse_word(&chars, &mut pos, names)?;
        skip_separators(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::Range(format!("unexpected `{}` in word `{text}`", chars[pos])));
        }
        Ok(w)
    }
}

fn skip_separators(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && (chars[*pos].is_whitespace() || chars[*pos] == '*' || chars[*pos] == '.') {
        *pos += 1;
    }
}

fn parse_word(chars: &[char], pos: &mut usize, names: &[String]) -> Result<FreeWord> {
    let mut w = FreeWord::identity();
    loop {
        skip_separators(chars, pos);
        if *pos >= chars.len() || chars[*pos] == ')' {
            return Ok(w);
        }
        let atom = if chars[*pos] == '(' {
            *pos += 1;
            let inner = parse_word(chars, pos, names)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(Error::Range("unbalanced parenthesis in word".into()));
            }
            *pos += 1;
            inner
        } else if chars[*pos].is_alphanumeric() || chars[*pos] == '_' || chars[*pos] == '#' {
            let start = *pos;
            while *pos < chars.len() && (chars[*pos].is_alphanumeric() || chars[*pos] == '_' || chars[*pos] == '#') {
                *pos += 1;
            }
            let name: String = chars[start..*pos].iter().collect();
            if name == "1" {
                FreeWord::identity()
            } else {
                let s = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::Range(format!("unknown generator `{name}`")))?;
                FreeWord::generator(s)
            }
        } else {
            return Err(Error::Range(format!("unexpected `{}` in word", chars[*pos])));
        };
        let mut exp = 1i64;
        if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let start = *pos;
            if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            exp = digits.parse().map_err(|_| Error::Range(format!("bad exponent `{digits}`")))?;
        }
        w = w.mul(&atom.pow(exp));
    }
}

/// The free group on countably many generators, for symbolic propagation.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeGroup;

impl GroupOps for FreeGroup {
    type Elem = FreeWord;
    fn product(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }
    fn inverse(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }
}

/// A group presentation `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    /// Generator names; symbol `i` is `generators[i]`.
    pub generators: Vec<String>,
    /// Freely reduced, nonempty relators.
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    /// Builds a presentation, dropping empty relators.
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Self {
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Presentation { generators, relators }
    }

    /// Relators rendered with generator names.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| r.render(&self.generators)).collect()
    }

    /// Relators up to cyclic permutation and inversion, each rendered as a
    /// name sequence, sorted.
    pub fn canonical_relators(&self) -> BTreeSet<Vec<(String, i8)>> {
        self.relators
            .iter()
            .map(|r| {
                r.canonical_cyclic()
                    .into_iter()
                    .map(|(s, e)| (self.generators[s].clone(), e))
                    .collect::<Vec<_>>()
            })
            .filter(|v| !v.is_empty())
            .collect()
    }
}

/// Symbol of `x_i` (0-based strand `i`) in a braid presentation.
pub fn x_symbol(i: usize) -> Symbol {
    2 * i
}

/// Symbol of `y_i` (0-based strand `i`) in a braid presentation.
pub fn y_symbol(i: usize) -> Symbol {
    2 * i + 1
}

fn pair_names(count: usize) -> Vec<String> {
    (1..=count).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect()
}

/// Bottom labels of a framed braid as free words in the top labels
/// `x_i, y_i` (kinks first, at the top of their strands; then letters).
pub fn symbolic_propagate(link: &FramedLink) -> Vec<Pair<FreeWord>> {
    let top: Vec<Pair<FreeWord>> = (0..link.braid().strands())
        .map(|i| (FreeWord::generator(x_symbol(i)), FreeWord::generator(y_symbol(i))))
        .collect();
    crate::coloring::propagate(&FreeGroup, link, &top).0
}

/// Presentation of the fundamental heap of a framed braid closure:
/// generators `x_i, y_i` per strand, relators `bottom_i · top_i⁻¹`.
pub fn presentation(link: &FramedLink) -> Presentation {
    let bottom = symbolic_propagate(link);
    let mut relators = Vec::with_capacity(2 * bottom.len());
    for (i, (p, q)) in bottom.iter().enumerate() {
        relators.push(p.mul(&FreeWord::generator(x_symbol(i)).inverse()));
        relators.push(q.mul(&FreeWord::generator(y_symbol(i)).inverse()));
    }
    Presentation::new(pair_names(bottom.len()), relators)
}

/// Applies `σ₁^n` to two pairs over the free group.
fn twist_box(left: Pair<FreeWord>, right: Pair<FreeWord>, n: i64) -> (Pair<FreeWord>, Pair<FreeWord>) {
    let (mut l, mut r) = (left, right);
    for _ in 0..n.unsigned_abs() {
        (l, r) = if n > 0 { cross_positive(&FreeGroup, &l, &r) } else { cross_negative(&FreeGroup, &l, &r) };
    }
    (l, r)
}

/// Presentation of the fundamental heap of the pretzel link with the given
/// twist counts (zero framed).
///
/// Box `i` has top pairs `(x_i, y_i)` and `(y_{i+1}, x_{i+1})` (the right
/// arc is shared with box `i+1` and runs in the opposite direction, which
/// swaps its two parallel strands) and applies `σ₁^{n_i}`. The bottom right
/// pair `R_i` of box `i` is glued to the bottom left pair `L_{i+1}` of the
/// next box with the same swap: relators `R_i.0 · L_{i+1}.1⁻¹` and
/// `R_i.1 · L_{i+1}.0⁻¹`.
pub fn pretzel_presentation(twists: &[i64]) -> Result<Presentation> {
    let r = twists.len();
    if r < 2 {
        return Err(Error::Link("a pretzel link needs at least two twist boxes".into()));
    }
    let g = |i: usize, s: fn(usize) -> Symbol| FreeWord::generator(s(i % r));
    let boxes: Vec<(Pair<FreeWord>, Pair<FreeWord>)> = (0..r)
        .map(|i| twist_box((g(i, x_symbol), g(i, y_symbol)), (g(i + 1, y_symbol), g(i + 1, x_symbol)), twists[i]))
        .collect();
    let mut relators = Vec::with_capacity(2 * r);
    for i in 0..r {
        let (_, right) = &boxes[i];
        let (left_next, _) = &boxes[(i + 1) % r];
        relators.push(right.0.mul(&left_next.1.inverse()));
        relators.push(right.1.mul(&left_next.0.inverse()));
    }
    Ok(Presentation::new(pair_names(r), relators))
}

/// Result of the `y = xα` substitution and elimination of the `x`'s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaForm {
    /// Names of the surviving `x` generators (the free factor).
    pub free_generators: Vec<String>,
    /// Presentation on `α_1, …, α_n` (named `a1, …`) of the remaining factor.
    pub hat: Presentation,
}

impl AlphaForm {
    /// Rank of the free factor.
    pub fn free_rank(&self) -> usize {
        self.free_generators.len()
    }
}

/// Splits `x_a w x_b⁻¹` (with `w` free of `x`'s) into `(a, w, b)`.
fn split_x_form(r: &FreeWord, is_x: &impl Fn(Symbol) -> bool) -> Option<(Symbol, FreeWord, Symbol)> {
    let runs = r.runs();
    if runs.len() < 2 {
        return None;
    }
    let (first, last) = (runs[0], runs[runs.len() - 1]);
    if !is_x(first.0) || first.1 != 1 || !is_x(last.0) || last.1 != -1 {
        return None;
    }
    let middle = &runs[1..runs.len() - 1];
    if middle.iter().any(|(s, _)| is_x(*s)) {
        return None;
    }
    Some((first.0, FreeWord::from_runs(middle), last.0))
}

/// Substitutes `y_i = x_i α_i`, eliminates the `x`'s from relators of the
/// form `x_a w x_b⁻¹` (keeping the smaller index), turns `x_a w x_a⁻¹` into
/// `w`, and returns the surviving free generators with the `α`-presentation
/// (cyclically reduced, deduplicated up to cyclic permutation and
/// inversion). Expects the generator layout of [`presentation`].
pub fn alpha_form(p: &Presentation) -> Result<AlphaForm> {
    if !p.generators.len().is_multiple_of(2) {
        return Err(Error::Mismatch("alpha_form expects generators in (x, y) pairs".into()));
    }
    let n = p.generators.len() / 2;
    // New layout: x_i ↦ i, α_i ↦ n + i.
    let is_x = |s: Symbol| s < n;
    let sub = |s: Symbol| {
        let i = s / 2;
        if s.is_multiple_of(2) {
            FreeWord::generator(i)
        } else {
            FreeWord::from_runs(&[(i, 1), (n + i, 1)])
        }
    };
    let mut relators: Vec<FreeWord> = p.relators.iter().map(|r| r.substitute(&sub)).filter(|r| !r.is_empty()).collect();
    let mut eliminated = vec![false; n];
    loop {
        let found = relators
            .iter()
            .find_map(|r| split_x_form(r, &is_x).filter(|(a, _, b)| a != b));
        let Some((a, w, b)) = found else { break };
        let (target, replacement) =
            if b > a { (b, FreeWord::generator(a).mul(&w)) } else { (a, FreeWord::generator(b).mul(&w.inverse())) };
        eliminated[target] = true;
        let f = |s: Symbol| if s == target { replacement.clone() } else { FreeWord::generator(s) };
        relators = relators.iter().map(|r| r.substitute(&f)).filter(|r| !r.is_empty()).collect();
    }
    let mut hat_relators = Vec::new();
    let mut seen = BTreeSet::new();
    for r in &relators {
        let w = match split_x_form(r, &is_x) {
            Some((a, w, b)) if a == b => w,
            _ if r.symbols().iter().all(|&s| !is_x(s)) => r.clone(),
            _ => {
                return Err(Error::BrokenComplex(format!(
                    "relator `{}` still involves free generators",
                    r.render(&alpha_names(n))
                )))
            }
        };
        let w = w.cyclically_reduced();
        if w.is_empty() {
            continue;
        }
        let shifted = FreeWord::from_runs(&w.runs().iter().map(|&(s, e)| (s - n, e)).collect::<Vec<_>>());
        if seen.insert(shifted.canonical_cyclic()) {
            hat_relators.push(shifted);
        }
    }
    let free_generators = (0..n).filter(|&i| !eliminated[i]).map(|i| p.generators[2 * i].clone()).collect();
    let names = (1..=n).map(|i| format!("a{i}")).collect();
    Ok(AlphaForm { free_generators, hat: Presentation::new(names, hat_relators) })
}

fn alpha_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("a{i}"))).collect()
}

/// Tietze simplification: each pass takes the shortest relator (ties broken
/// lexicographically) containing a generator that occurs in it exactly
/// once, solves for the largest such generator, substitutes it everywhere
/// and removes it. Stops when no pass applies or after `max_passes`.
pub fn tietze_simplify(p: &Presentation, max_passes: usize) -> Presentation {
    let mut gens = p.generators.clone();
    let mut rels: Vec<FreeWord> = dedupe(p.relators.iter().map(FreeWord::cyclically_reduced).collect());
    for _ in 0..max_passes {
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by(|&a, &b| rels[a].len().cmp(&rels[b].len()).then_with(|| rels[a].letters().cmp(&rels[b].letters())));
        let pick = order.into_iter().find_map(|ri| {
            let r = &rels[ri];
            r.symbols().into_iter().rev().find(|&s| r.occurrences(s) == 1).map(|s| (ri, s))
        });
        let Some((ri, s)) = pick else { break };
        // r = A s^ε B  ⇒  s = (B A)^{−ε}.
        let r = rels.remove(ri);
        let k = r.runs().iter().position(|run| run.0 == s).expect("symbol occurs");
        let eps = r.runs()[k].1;
        let a = FreeWord::from_runs(&r.runs()[..k]);
        let b = FreeWord::from_runs(&r.runs()[k + 1..]);
        let value = b.mul(&a).pow(-eps);
        let f = |t: Symbol| {
            if t == s {
                value.clone()
            } else if t > s {
                FreeWord::generator(t - 1)
            } else {
                FreeWord::generator(t)
            }
        };
        let value_shifted = value.substitute(&|t: Symbol| if t > s { FreeWord::generator(t - 1) } else { FreeWord::generator(t) });
        let g = |t: Symbol| if t == s { value_shifted.clone() } else { f(t) };
        rels = dedupe(rels.iter().map(|w| w.substitute(&g).cyclically_reduced()).filter(|w| !w.is_empty()).collect());
        gens.remove(s);
    }
    Presentation::new(gens, rels)
}

fn dedupe(rels: Vec<FreeWord>) -> Vec<FreeWord> {
    let mut seen = BTreeSet::new();
    rels.into_iter().filter(|r| !r.is_empty() && seen.insert(r.canonical_cyclic())).collect()
}

/// Abelianization via the Smith form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let g = p.generators.len();
    let rows: Vec<Vec<(usize, i64)>> =
        p.relators.iter().map(|r| (0..g).map(|s| (s, r.exponent_sum(s))).filter(|e| e.1 != 0).collect()).collect();
    let m = IntMatrix::from_sparse_rows(g, rows);
    let snf = smith_normal_form(&m);
    let mut entries: Vec<BigInt> = snf.factors.clone();
    entries.extend(core::iter::repeat_n(BigInt::from(0), g - snf.rank));
    AbelianGroup::from_diagonal(&entries)
}

/// Target of a homomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetGroup {
    /// A finite group with one image per presentation generator.
    Finite {
        /// The group.
        group: FiniteGroup,
        /// Images of the presentation generators.
        images: Vec<GroupElement>,
    },
    /// A group given by generators and power laws `w^k = 1`.
    Power {
        /// Target generator names.
        generators: Vec<String>,
        /// Laws `(w, k)`.
        laws: Vec<(FreeWord, u64)>,
        /// Images (words in the target generators) of the presentation generators.
        images: Vec<FreeWord>,
    },
}

impl TargetGroup {
    /// Parses `GROUP | g1=e1; g2=e2; …` (finite target) or
    /// `t1, t2, … | law1, law2, … | g1=w1; g2=w2; …` (power-law target; a
    /// law is a word raised to a positive power, e.g. `(x y)^3`). Every
    /// generator of `p` needs an image.
    pub fn parse(text: &str, p: &Presentation) -> Result<TargetGroup> {
        let parts: Vec<&str> = text.split('|').map(str::trim).collect();
        let images_text = *parts.last().ok_or_else(|| Error::Range("empty target".into()))?;
        let mut assignments: BTreeMap<String, String> = BTreeMap::new();
        for item in images_text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Range(format!("image `{item}` needs `=`")))?;
            assignments.insert(k.trim().to_string(), v.trim().to_string());
        }
        let image_of = |name: &String| assignments.get(name).ok_or_else(|| Error::MissingImage(name.clone()));
        match parts.len() {
            2 => {
                let group = crate::algebra::make_group(parts[0])?;
                let images = p.generators.iter().map(|g| group.parse_element(image_of(g)?)).collect::<Result<_>>()?;
                Ok(TargetGroup::Finite { group, images })
            }
            3 => {
                let generators: Vec<String> =
                    parts[0].split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                let mut laws = Vec::new();
                for law in parts[1].split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let w = FreeWord::parse(law, &generators)?;
                    laws.push(as_power_law(&w)?);
                }
                let images =
                    p.generators.iter().map(|g| FreeWord::parse(image_of(g)?, &generators)).collect::<Result<_>>()?;
                Ok(TargetGroup::Power { generators, laws, images })
            }
            _ => Err(Error::Range(format!("cannot parse target `{text}`"))),
        }
    }
}

/// Writes a word as `base^k` with `k` maximal.
fn as_power_law(w: &FreeWord) -> Result<(FreeWord, u64)> {
    let letters = w.letters();
    if letters.is_empty() {
        return Err(Error::Range("empty law".into()));
    }
    let n = letters.len();
    for period in 1..=n {
        if n.is_multiple_of(period) && (period..n).all(|i| letters[i] == letters[i - period]) {
            let base: Vec<(Symbol, i64)> = letters[..period].iter().map(|&(s, e)| (s, i64::from(e))).collect();
            return Ok((FreeWord::from_runs(&base), (n / period) as u64));
        }
    }
    unreachable!("period n always matches")
}

/// Outcome of a homomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismReport {
    /// True when every relator maps to the identity (for power-law targets:
    /// when the reduction reached the empty word; `false` means "not
    /// verified").
    pub holds: bool,
    /// For finite targets: whether the images generate the target.
    pub surjective: Option<bool>,
    /// Per relator: its rendering and the rendering of its (reduced) image.
    pub trace: Vec<(String, String)>,
}

/// Checks that the generator images define a homomorphism.
pub fn check_homomorphism(p: &Presentation, target: &TargetGroup) -> Result<HomomorphismReport> {
    match target {
        TargetGroup::Finite { group, images } => {
            if images.len() != p.generators.len() {
                return Err(Error::MissingImage(p.generators[images.len().min(p.generators.len() - 1)].clone()));
            }
            let mut holds = true;
            let mut trace = Vec::new();
            for r in &p.relators {
                let mut v = group.identity();
                for &(s, e) in r.runs() {
                    v = group.mul(v, group.pow(images[s], e));
                }
                holds &= v == group.identity();
                trace.push((r.render(&p.generators), group.name(v).to_string()));
            }
            let surjective = generated_subgroup(group, images)?.len() == group.order();
            Ok(HomomorphismReport { holds, surjective: Some(surjective), trace })
        }
        TargetGroup::Power { generators, laws, images } => {
            if images.len() != p.generators.len() {
                return Err(Error::MissingImage(p.generators[images.len().min(p.generators.len() - 1)].clone()));
            }
            let mut holds = true;
            let mut trace = Vec::new();
            for r in &p.relators {
                let image = r.substitute(&|s| images[s].clone());
                let reduced = reduce_with_laws(&image, laws);
                holds &= reduced.is_empty();
                trace.push((r.render(&p.generators), reduced.render(generators)));
            }
            Ok(HomomorphismReport { holds, surjective: None, trace })
        }
    }
}

/// Node budget of the search in [`reduce_with_laws`].
pub const LAW_SEARCH_LIMIT: usize = 20_000;

/// Reduces a cyclic word with power laws `w^k = 1`. Let `R` be `k`
/// consecutive copies of `w^{±1}` or of a cyclic rotation of it. A step
/// finds a cyclic subword `u` of the current word with `R = u v` and
/// `|u| ≥ |R|/2`, replaces `u` by `v⁻¹` (removing it when `u = R`) and
/// cyclically reduces. Every sequence of steps is explored breadth-first
/// (up to [`LAW_SEARCH_LIMIT`] distinct cyclic words); the result is the
/// empty word when some sequence reaches it, and otherwise the shortest word
/// seen. An empty result proves the word is trivial in the target; a
/// nonempty one is inconclusive.
pub fn reduce_with_laws(word: &FreeWord, laws: &[(FreeWord, u64)]) -> FreeWord {
    let mut patterns: Vec<Vec<(Symbol, i8)>> = Vec::new();
    for (w, k) in laws {
        let k = usize::try_from(*k).unwrap_or(usize::MAX);
        if k == 0 || w.is_empty() {
            continue;
        }
        for base in [w.clone(), w.inverse()] {
            let letters = base.letters();
            for r in 0..letters.len() {
                let mut rot = letters.clone();
                rot.rotate_left(r);
                let block: Vec<(Symbol, i8)> = rot.iter().copied().cycle().take(rot.len().saturating_mul(k)).collect();
                if !patterns.contains(&block) {
                    patterns.push(block);
                }
            }
        }
    }
    let start = word.cyclically_reduced();
    let mut best = start.clone();
    let mut seen = BTreeSet::new();
    seen.insert(start.canonical_cyclic());
    let mut queue = alloc::collections::VecDeque::from([start]);
    while let Some(current) = queue.pop_front() {
        if current.is_empty() {
            return current;
        }
        if current.len() < best.len() {
            best = current.clone();
        }
        let letters = current.letters();
        let n = letters.len();
        for block in &patterns {
            let full = block.len();
            for start in 0..n {
                let matched = (0..full.min(n)).take_while(|&j| letters[(start + j) % n] == block[j]).count();
                if 2 * matched < full {
                    continue;
                }
                for p in full.div_ceil(2).max(1)..=matched {
                    let mut rest: Vec<(Symbol, i64)> =
                        (p..n).map(|j| letters[(start + j) % n]).map(|(s, e)| (s, i64::from(e))).collect();
                    rest.extend(block[p..].iter().rev().map(|&(s, e)| (s, -i64::from(e))));
                    let next = FreeWord::from_runs(&rest).cyclically_reduced();
                    if next.is_empty() {
                        return next;
                    }
                    if seen.len() < LAW_SEARCH_LIMIT && seen.insert(next.canonical_cyclic()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    best
}

/// Exponent sums of a word as a dense vector over `generator_count`
/// symbols.
pub fn exponent_vector(w: &FreeWord, generator_count: usize) -> Vec<i64> {
    (0..generator_count).map(|s| w.exponent_sum(s)).collect()
}

/// Converts torsion factors to machine integers (for reporting).
pub fn torsion_as_u64(g: &AbelianGroup) -> Vec<u64> {
    g.torsion.iter().map(|t| t.to_u64().unwrap_or(u64::MAX)).collect()
}

/// Convenience: kinks of `C_n` on a symbolic pair, `(x(x⁻¹y)ⁿ, y(x⁻¹y)ⁿ)`.
pub fn symbolic_kinks(pair: &Pair<FreeWord>, n: i64) -> Pair<FreeWord> {
    let mut p = pair.clone();
    for _ in 0..n.unsigned_abs() {
        p = kink(&FreeGroup, &p, if n > 0 { 1 } else { -1 });
    }
    p
}
