//! Framed links presented as closures of braids with framing kinks.
//!
//! A braid letter `k` (`1 ≤ |k| < n`) crosses the strands at positions
//! `|k|−1` and `|k|` (0-based); its sign is the crossing sign. In a positive
//! letter the left strand passes under and moves right; in a negative letter
//! the right strand passes under and moves left. Every over-arc is oriented
//! downward.
//!
//! Each component carries `|framing|` kinks of the framing's sign. They sit
//! at the top of one strand of the component, by default its minimal strand.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// One braid generator `σ_position^{sign}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    /// Generator index `i ∈ 1..n−1`.
    pub position: usize,
    /// `+1` or `−1`.
    pub sign: i8,
}

impl Letter {
    /// The inverse letter.
    pub fn inverse(self) -> Letter {
        Letter { position: self.position, sign: -self.sign }
    }

    /// Signed integer form, as in the textual syntax.
    pub fn as_int(self) -> i64 {
        self.position as i64 * i64::from(self.sign)
    }
}

/// A braid word on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Builds a braid from signed generator indices.
    pub fn new(strands: usize, letters: &[i64]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Link("a braid needs at least one strand".into()));
        }
        let mut out = Vec::with_capacity(letters.len());
        for &k in letters {
            let p = k.unsigned_abs() as usize;
            if k == 0 || p >= strands {
                return Err(Error::Link(format!("letter {k} is out of range for {strands} strands")));
            }
            out.push(Letter { position: p, sign: if k > 0 { 1 } else { -1 } });
        }
        Ok(BraidWord { strands, letters: out })
    }

    /// Parses whitespace-separated nonzero integers.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut ints = Vec::new();
        for tok in text.split_whitespace() {
            let k: i64 = tok.parse().map_err(|_| Error::Link(format!("bad braid token `{tok}`")))?;
            ints.push(k);
        }
        BraidWord::new(strands, &ints)
    }

    /// Number of strands.
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The letters.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Signed integer form of the letters.
    pub fn as_ints(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.as_int()).collect()
    }

    /// Sum of the letter signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.sign)).sum()
    }

    /// `end[t]`: bottom position reached by the strand starting at top
    /// position `t`.
    pub fn strand_ends(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = starting strand
        for l in &self.letters {
            at.swap(l.position - 1, l.position);
        }
        let mut end = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            end[s] = pos;
        }
        end
    }

    /// The word with its first letter moved to the end (a conjugate).
    pub fn rotate_left(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(1);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Inserts `σ_position^{sign} σ_position^{−sign}` before letter `at`.
    pub fn insert_cancelling_pair(&self, at: usize, position: usize, sign: i8) -> Result<BraidWord> {
        if position == 0 || position >= self.strands || at > self.letters.len() || sign.abs() != 1 {
            return Err(Error::Link("invalid cancelling pair".into()));
        }
        let mut letters = self.letters.clone();
        let l = Letter { position, sign };
        letters.insert(at, l.inverse());
        letters.insert(at, l);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Indices `i` where letters `i, i+1, i+2` read `σ_j^ε σ_{j±1}^ε σ_j^ε`.
    pub fn braid_relation_sites(&self) -> Vec<usize> {
        (0..self.letters.len().saturating_sub(2))
            .filter(|&i| {
                let (a, b, c) = (self.letters[i], self.letters[i + 1], self.letters[i + 2]);
                a == c && a.sign == b.sign && a.position.abs_diff(b.position) == 1
            })
            .collect()
    }

    /// Replaces `σ_j σ_k σ_j` at `at` by `σ_k σ_j σ_k` (same signs).
    pub fn apply_braid_relation(&self, at: usize) -> Result<BraidWord> {
        if !self.braid_relation_sites().contains(&at) {
            return Err(Error::Link(format!("no braid relation applies at letter {at}")));
        }
        let mut letters = self.letters.clone();
        let (a, b) = (letters[at], letters[at + 1]);
        letters[at] = b;
        letters[at + 1] = a;
        letters[at + 2] = b;
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Indices `i` where letters `i, i+1` commute (`|j − k| ≥ 2`).
    pub fn commutation_sites(&self) -> Vec<usize> {
        (0..self.letters.len().saturating_sub(1))
            .filter(|&i| self.letters[i].position.abs_diff(self.letters[i + 1].position) >= 2)
            .collect()
    }

    /// Swaps two commuting adjacent letters.
    pub fn apply_commutation(&self, at: usize) -> Result<BraidWord> {
        if !self.commutation_sites().contains(&at) {
            return Err(Error::Link(format!("letters {at} and {} do not commute", at + 1)));
        }
        let mut letters = self.letters.clone();
        letters.swap(at, at + 1);
        Ok(BraidWord { strands: self.strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| format!("{}", l.as_int())).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Where a weight-carrying crossing comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SiteKind {
    /// The braid letter with this index.
    Letter {
        /// Index into the braid word.
        index: usize,
    },
    /// A framing kink.
    Kink {
        /// Component carrying the kink.
        component: usize,
        /// Index of the kink on that component (0-based, top to bottom).
        kink: usize,
        /// Top strand position the kink sits on.
        strand: usize,
    },
}

/// A weight-carrying crossing of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrossingSite {
    /// Letter or kink.
    pub kind: SiteKind,
    /// Crossing sign.
    pub sign: i8,
    /// Component the under-arc belongs to.
    pub under_component: usize,
}

/// A framed link: braid closure plus one framing integer per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    braid: BraidWord,
    framings: Vec<i64>,
    components: Vec<Vec<usize>>,
    component_of_strand: Vec<usize>,
    kink_strands: Vec<usize>,
}

impl FramedLink {
    /// Closure of `braid` with the given framings (one per component,
    /// components ordered by minimal strand index).
    pub fn new(braid: BraidWord, framings: &[i64]) -> Result<Self> {
        let ends = braid.strand_ends();
        let n = braid.strands();
        let mut component_of_strand = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if component_of_strand[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut cycle = Vec::new();
            let mut s = start;
            while component_of_strand[s] == usize::MAX {
                component_of_strand[s] = id;
                cycle.push(s);
                s = ends[s];
            }
            cycle.sort_unstable();
            components.push(cycle);
        }
        if framings.len() != components.len() {
            return Err(Error::Link(format!(
                "the closure has {} component(s) but {} framing(s) were given",
                components.len(),
                framings.len()
            )));
        }
        let kink_strands = components.iter().map(|c| c[0]).collect();
        Ok(FramedLink { braid, framings: framings.to_vec(), components, component_of_strand, kink_strands })
    }

    /// Parses a braid in textual form and closes it.
    pub fn parse(braid_text: &str, strands: usize, framings: &[i64]) -> Result<Self> {
        FramedLink::new(BraidWord::parse(braid_text, strands)?, framings)
    }

    /// Moves the kinks of `component` to the top of another of its strands.
    pub fn with_kink_strand(&self, component: usize, strand: usize) -> Result<Self> {
        if component >= self.components.len() || !self.components[component].contains(&strand) {
            return Err(Error::Link(format!("strand {strand} is not part of component {component}")));
        }
        let mut out = self.clone();
        out.kink_strands[component] = strand;
        Ok(out)
    }

    /// The braid.
    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    /// Framing integers, one per component.
    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    /// Components as sorted lists of top strand positions.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Number of components.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Component of the strand starting at top position `strand`.
    pub fn component_of_strand(&self, strand: usize) -> usize {
        self.component_of_strand[strand]
    }

    /// Top strand carrying the kinks of each component.
    pub fn kink_strands(&self) -> &[usize] {
        &self.kink_strands
    }

    /// Component of the strand found at `position` after the first `level`
    /// letters.
    pub fn component_at(&self, level: usize, position: usize) -> usize {
        let mut at: Vec<usize> = (0..self.braid.strands()).collect();
        for l in &self.braid.letters()[..level] {
            at.swap(l.position - 1, l.position);
        }
        self.component_of_strand[at[position]]
    }

    /// Writhe of the zero-framed closure (sum of letter signs).
    pub fn writhe(&self) -> i64 {
        self.braid.writhe()
    }

    /// Weight-carrying crossings: all braid letters in order, then each
    /// component's kinks.
    pub fn crossing_sites(&self) -> Vec<CrossingSite> {
        let mut at: Vec<usize> = (0..self.braid.strands()).collect();
        let mut sites = Vec::with_capacity(self.braid.letters().len());
        for (index, l) in self.braid.letters().iter().enumerate() {
            let under_pos = if l.sign > 0 { l.position - 1 } else { l.position };
            let under_component = self.component_of_strand[at[under_pos]];
            sites.push(CrossingSite { kind: SiteKind::Letter { index }, sign: l.sign, under_component });
            at.swap(l.position - 1, l.position);
        }
        for (c, &f) in self.framings.iter().enumerate() {
            let sign = if f > 0 { 1 } else { -1 };
            for kink in 0..f.unsigned_abs() as usize {
                sites.push(CrossingSite {
                    kind: SiteKind::Kink { component: c, kink, strand: self.kink_strands[c] },
                    sign,
                    under_component: c,
                });
            }
        }
        sites
    }
}

/// The torus link `T(2, n)` as the closure of `σ₁ⁿ` (`n` may be negative),
/// zero framed.
pub fn torus_2(n: i64) -> FramedLink {
    let letters = vec![n.signum(); n.unsigned_abs() as usize];
    let braid = BraidWord::new(2, &letters).expect("valid torus braid");
    let comps = if n % 2 == 0 { 2 } else { 1 };
    FramedLink::new(braid, &vec![0; comps]).expect("valid torus closure")
}

/// The unknot with `n` kinks (telephone cord), framing `n`.
pub fn cord(n: i64) -> FramedLink {
    FramedLink::new(BraidWord::new(1, &[]).expect("trivial braid"), &[n]).expect("valid cord")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_small_closures() {
        assert_eq!(FramedLink::parse("1 1", 2, &[0, 0]).unwrap().component_count(), 2);
        assert_eq!(FramedLink::parse("1 1 1", 2, &[0]).unwrap().component_count(), 1);
        let c3 = FramedLink::parse("", 1, &[3]).unwrap();
        assert_eq!(c3.component_count(), 1);
        assert_eq!(c3.crossing_sites().len(), 3);
        assert!(FramedLink::parse("1 1", 2, &[0]).is_err());
        assert!(FramedLink::parse("2", 2, &[0]).is_err());
        assert!(FramedLink::parse("0", 2, &[0]).is_err());
        assert!(FramedLink::parse("x", 2, &[0]).is_err());
    }

    #[test]
    fn crossing_inventory() {
        let t = torus_2(4);
        let s = t.crossing_sites();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|x| x.sign == 1));
        let c = cord(2).crossing_sites();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|x| x.sign == 1 && matches!(x.kind, SiteKind::Kink { .. })));
        let k = FramedLink::parse("1", 2, &[-1]).unwrap().crossing_sites();
        assert_eq!(k.len(), 2);
        assert_eq!(k[1].sign, -1);
    }

    #[test]
    fn under_components_follow_strands() {
        // Hopf link: σ₁σ₁; the first under strand starts at position 0.
        let h = torus_2(2);
        let s = h.crossing_sites();
        assert_eq!(s[0].under_component, 0);
        assert_eq!(s[1].under_component, 1);
        let neg = torus_2(-2).crossing_sites();
        assert_eq!(neg[0].under_component, 1);
        assert_eq!(neg[1].under_component, 0);
    }

    #[test]
    fn braid_moves() {
        let w = BraidWord::new(3, &[1, 2, 1, -2]).unwrap();
        assert_eq!(w.braid_relation_sites(), vec![0]);
        assert_eq!(w.apply_braid_relation(0).unwrap().as_ints(), vec![2, 1, 2, -2]);
        assert!(w.apply_braid_relation(1).is_err());
        assert_eq!(w.rotate_left().as_ints(), vec![2, 1, -2, 1]);
        assert_eq!(w.insert_cancelling_pair(1, 2, -1).unwrap().as_ints(), vec![1, -2, 2, 2, 1, -2]);
        let c = BraidWord::new(4, &[1, 3]).unwrap();
        assert_eq!(c.apply_commutation(0).unwrap().as_ints(), vec![3, 1]);
    }
}
