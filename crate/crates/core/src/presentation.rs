//! The picture-group presentation with generators `x_ij`, relator words, a
//! single-step Tietze elimination, and verification through the matrix
//! images of the generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::HomCache;
use crate::complex::{two_cell_boundary, TwoCellKind};
use crate::matrix::{generator_image, UnipotentMatrix};
use crate::partition::enumerate_partitions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("generator x_{0}_{1} is not present")]
    UnknownGenerator(usize, usize),
    #[error("no relator contains x_{0}_{1} exactly once")]
    NotEliminable(usize, usize),
}

/// A generator `x_ij` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub i: usize,
    pub j: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(i: usize, j: usize) -> Self {
        Letter { i, j, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn generator(self) -> (usize, usize) {
        (self.i, self.j)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}_{}", self.i, self.j)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PresentationError::Parse(s.to_string());
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let rest = body.strip_prefix("x_").ok_or_else(err)?;
        let (i, j) = rest.split_once('_').ok_or_else(err)?;
        let i = i.parse().map_err(|_| err())?;
        let j = j.parse().map_err(|_| err())?;
        Ok(Letter { i, j, inverse })
    }
}

pub type Word = Vec<Letter>;

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

pub fn parse_word(s: &str) -> Result<Word, PresentationError> {
    if s.trim() == "1" {
        return Ok(Vec::new());
    }
    s.split_whitespace().map(str::parse).collect()
}

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancellation around the ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

/// `true` iff `b` is a cyclic rotation of `a` or of `a^{-1}`.
pub fn cyclically_equivalent(a: &[Letter], b: &[Letter]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let rotations = |w: &[Letter]| (0..w.len()).any(|r| w[r..].iter().chain(&w[..r]).eq(b.iter()));
    rotations(a) || rotations(&inverse_word(a))
}

/// `[x, y] = y^{-1} x y x^{-1}`.
pub fn commutator(x: Letter, y: Letter) -> Word {
    vec![y.inv(), x, y, x.inv()]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<(usize, usize)>,
    pub relators: Vec<Word>,
}

/// Two intervals are noncrossing when they are disjoint or one lies in the
/// interior of the other.
fn noncrossing_intervals((i, j): (usize, usize), (k, l): (usize, usize)) -> bool {
    j < k || l < i || (i < k && l < j) || (k < i && j < l)
}

/// Generators `x_ij` for `1 <= i < j <= n`; relators
/// `x_ik^{-1} [x_ij, x_jk]` for `i < j < k`, then `[x_ij, x_kl]` for each
/// unordered noncrossing pair of intervals.
pub fn presentation(n: usize) -> GroupPresentation {
    let generators: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut relators = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let mut w = vec![Letter::new(i, k).inv()];
                w.extend(commutator(Letter::new(i, j), Letter::new(j, k)));
                relators.push(w);
            }
        }
    }
    for (a, &g) in generators.iter().enumerate() {
        for &h in &generators[a + 1..] {
            if noncrossing_intervals(g, h) {
                relators.push(commutator(Letter::new(g.0, g.1), Letter::new(h.0, h.1)));
            }
        }
    }
    GroupPresentation { generators, relators }
}

impl GroupPresentation {
    /// Removes generator `g` using a relator in which it occurs exactly once,
    /// substituting its solution into the remaining relators.
    pub fn eliminate(&self, g: (usize, usize)) -> Result<GroupPresentation, PresentationError> {
        if !self.generators.contains(&g) {
            return Err(PresentationError::UnknownGenerator(g.0, g.1));
        }
        let (idx, pos) = self
            .relators
            .iter()
            .enumerate()
            .find_map(|(r, w)| {
                let hits: Vec<usize> = (0..w.len()).filter(|&p| w[p].generator() == g).collect();
                (hits.len() == 1).then(|| (r, hits[0]))
            })
            .ok_or(PresentationError::NotEliminable(g.0, g.1))?;
        let w = &self.relators[idx];
        // rotate so that the letter comes first: l * rest = 1
        let rest: Word = w[pos + 1..].iter().chain(&w[..pos]).copied().collect();
        let solution = if w[pos].inverse { rest } else { inverse_word(&rest) };
        let relators = self
            .relators
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != idx)
            .map(|(_, w)| {
                let substituted: Word = w
                    .iter()
                    .flat_map(|&l| {
                        if l.generator() != g {
                            vec![l]
                        } else if l.inverse {
                            inverse_word(&solution)
                        } else {
                            solution.clone()
                        }
                    })
                    .collect();
                cyclic_reduce(&substituted)
            })
            .filter(|w| !w.is_empty())
            .collect();
        let generators = self.generators.iter().copied().filter(|&h| h != g).collect();
        Ok(GroupPresentation { generators, relators })
    }

    /// No relators left: the group is free on the generators.
    pub fn is_visibly_free(&self) -> bool {
        self.relators.is_empty()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|&(i, j)| Letter::new(i, j).to_string()).collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        writeln!(f, "relators:")?;
        for w in &self.relators {
            writeln!(f, "{}", format_word(w))?;
        }
        Ok(())
    }
}

impl FromStr for GroupPresentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PresentationError::Parse(s.lines().next().unwrap_or("").to_string());
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().and_then(|l| l.strip_prefix("generators:")).ok_or_else(err)?;
        let generators = head
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Letter>().map(Letter::generator))
            .collect::<Result<Vec<_>, _>>()?;
        if lines.next().map(str::trim) != Some("relators:") {
            return Err(err());
        }
        let relators = lines.map(parse_word).collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPresentation { generators, relators })
    }
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Serialize for GroupPresentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawPresentation {
            generators: self.generators.iter().map(|&(i, j)| Letter::new(i, j).to_string()).collect(),
            relators: self.relators.iter().map(|w| format_word(w)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawPresentation::deserialize(deserializer)?;
        let generators = raw
            .generators
            .iter()
            .map(|g| g.parse::<Letter>().map(Letter::generator))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        let relators =
            raw.relators.iter().map(|w| parse_word(w)).collect::<Result<_, _>>().map_err(serde::de::Error::custom)?;
        Ok(GroupPresentation { generators, relators })
    }
}

/// Evaluates words through the derived generator images.
pub struct MatrixEvaluator {
    n: usize,
    images: BTreeMap<(usize, usize), (UnipotentMatrix, UnipotentMatrix)>,
}

impl MatrixEvaluator {
    pub fn new(n: usize) -> Self {
        let mut images = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let m = generator_image(n, i, j);
                let inv = m.inverse();
                images.insert((i, j), (m, inv));
            }
        }
        MatrixEvaluator { n, images }
    }

    pub fn eval(&self, w: &[Letter]) -> UnipotentMatrix {
        w.iter().fold(UnipotentMatrix::identity(self.n), |acc, l| {
            let (m, inv) = &self.images[&l.generator()];
            acc.mul(if l.inverse { inv } else { m })
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelatorReport {
    pub relators: usize,
    pub squares: usize,
    pub pentagons: usize,
    pub failures: Vec<String>,
}

impl RelatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every relator and every 2-cell boundary word evaluates to the
/// identity, and that each boundary word is a cyclic form of the relator of
/// its type.
pub fn verify_relators(n: usize, cache: &HomCache) -> RelatorReport {
    let eval = MatrixEvaluator::new(n);
    let pres = presentation(n);
    let mut report = RelatorReport::default();
    for w in &pres.relators {
        report.relators += 1;
        if !eval.eval(w).is_identity() {
            report.failures.push(format!("relator {}", format_word(w)));
        }
    }
    for s in enumerate_partitions(n).iter().filter(|s| s.rank() == 2) {
        let cell = match two_cell_boundary(s, cache) {
            Ok(c) => c,
            Err(e) => {
                report.failures.push(format!("2-cell {s}: {e}"));
                continue;
            }
        };
        let expected = match cell.kind {
            TwoCellKind::Square { a, b } => {
                report.squares += 1;
                commutator(Letter::new(a.0, a.1), Letter::new(b.0, b.1))
            }
            TwoCellKind::Pentagon { i, j, k } => {
                report.pentagons += 1;
                let mut w = vec![Letter::new(i, k).inv()];
                w.extend(commutator(Letter::new(i, j), Letter::new(j, k)));
                w
            }
        };
        if !eval.eval(&cell.word).is_identity() {
            report.failures.push(format!("2-cell {s}: boundary {} is not trivial", format_word(&cell.word)));
        }
        if !cyclically_equivalent(&cell.word, &expected) {
            report.failures.push(format!(
                "2-cell {s}: boundary {} is not a cyclic form of {}",
                format_word(&cell.word),
                format_word(&expected)
            ));
        }
    }
    report
}
