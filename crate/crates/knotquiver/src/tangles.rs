//! Rational slopes, their odd-length continued fractions, the
//! orientation/connectivity automaton, and enumeration of rational knots.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub p: u64,
    pub q: u64,
}

impl Slope {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Parse(format!("{p}/{q}")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(Slope { p, q })
    }

    pub fn is_knot(&self) -> bool {
        self.p % 2 == 1
    }

    /// Same unoriented knot or link: `q -> q^{-1} mod p`.
    pub fn inverse(&self) -> Slope {
        if self.p == 1 {
            return *self;
        }
        Slope { p: self.p, q: mod_inverse(self.q % self.p, self.p) }
    }

    /// Mirror image: `q -> p - q`.
    pub fn mirror(&self) -> Slope {
        if self.p == 1 {
            return *self;
        }
        Slope { p: self.p, q: self.p - self.q % self.p }
    }

    /// Sum of the partial quotients; the crossing count of the alternating diagram.
    pub fn crossings(&self) -> u64 {
        euclid_quotients(self.p, self.q).iter().sum()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.trim().split_once('/').ok_or_else(|| Error::Parse(s.to_string()))?;
        let p: u64 = p.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let q: u64 = q.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        Slope::new(p, q)
    }
}

fn mod_inverse(q: u64, p: u64) -> u64 {
    let e = (q as i128).extended_gcd(&(p as i128));
    e.x.rem_euclid(p as i128) as u64
}

/// `p/q = c0 + 1/(c1 + 1/(...))`.
fn euclid_quotients(mut p: u64, mut q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while q != 0 {
        out.push(p / q);
        let r = p % q;
        p = q;
        q = r;
    }
    out
}

/// `[a1, ..., ar]` with value `a_r + 1/(a_{r-1} + 1/(... + 1/a_1))`.
/// `a1` is the innermost term and also the first stretch of twists applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        if terms.is_empty() || terms.len().is_multiple_of(2) {
            return Err(Error::InvalidContinuedFraction(format!("{terms:?} must have odd length")));
        }
        if terms.contains(&0) {
            return Err(Error::InvalidContinuedFraction(format!("{terms:?} has a zero term")));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn twist_count(&self) -> u64 {
        self.terms.iter().sum()
    }

    /// Twists in building order: `T^{a1} R^{a2} T^{a3} ...`.
    pub fn twists(&self) -> Vec<Twist> {
        let mut out = Vec::new();
        for (i, &a) in self.terms.iter().enumerate() {
            let kind = if i % 2 == 0 { Twist::T } else { Twist::R };
            out.extend(std::iter::repeat_n(kind, a as usize));
        }
        out
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        let terms = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        ContinuedFraction::new(terms)
    }
}

pub fn cf_expand(s: Slope) -> Result<ContinuedFraction> {
    if s.p.gcd(&s.q) != 1 {
        return Err(Error::NotCoprime { p: s.p, q: s.q });
    }
    if s.p < s.q {
        return Err(Error::InvalidContinuedFraction(format!("{s} is below 1")));
    }
    let mut terms = euclid_quotients(s.p, s.q);
    terms.reverse();
    if terms.len().is_multiple_of(2) {
        // [a1, ...] = [1, a1 - 1, ...]; the innermost Euclid quotient is >= 2 here
        terms[0] -= 1;
        terms.insert(0, 1);
    }
    ContinuedFraction::new(terms)
}

/// Accepts either `p/q` or `[a1,...,ar]`.
pub fn parse_link(s: &str) -> Result<Slope> {
    if s.trim_start().starts_with('[') {
        Ok(cf_value(&s.parse()?))
    } else {
        s.parse()
    }
}

pub fn cf_value(cf: &ContinuedFraction) -> Slope {
    let mut num = cf.terms[0];
    let mut den = 1u64;
    for &a in &cf.terms[1..] {
        let next = a * num + den;
        den = num;
        num = next;
    }
    Slope { p: num, q: den }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    T,
    R,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::T => "T",
            Twist::R => "R",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    Up,
    Op,
    Ri,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Up => "UP",
            Boundary::Op => "OP",
            Boundary::Ri => "RI",
        })
    }
}

impl Boundary {
    pub fn after(self, t: Twist) -> Boundary {
        match (self, t) {
            (Boundary::Up, Twist::T) => Boundary::Up,
            (Boundary::Op, Twist::T) => Boundary::Ri,
            (Boundary::Ri, Twist::T) => Boundary::Op,
            (Boundary::Up, Twist::R) => Boundary::Op,
            (Boundary::Op, Twist::R) => Boundary::Up,
            (Boundary::Ri, Twist::R) => Boundary::Ri,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    Knot,
    Link,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangleClass {
    pub boundary: Boundary,
    pub connectivity: Connectivity,
}

impl TangleClass {
    pub const TRIVIAL: TangleClass = TangleClass { boundary: Boundary::Up, connectivity: Connectivity::Link };

    /// One step of the six-state cycle
    /// `UPl -T- UPk -R- OPk -T- RIl -R- RIk -T- OPl -R- UPl`.
    pub fn after(self, t: Twist) -> TangleClass {
        use Connectivity::*;
        let (b, c) = match (self.boundary, self.connectivity, t) {
            (Boundary::Up, Link, Twist::T) => (Boundary::Up, Knot),
            (Boundary::Up, Knot, Twist::T) => (Boundary::Up, Link),
            (Boundary::Op, Knot, Twist::T) => (Boundary::Ri, Link),
            (Boundary::Ri, Link, Twist::T) => (Boundary::Op, Knot),
            (Boundary::Ri, Knot, Twist::T) => (Boundary::Op, Link),
            (Boundary::Op, Link, Twist::T) => (Boundary::Ri, Knot),
            (Boundary::Up, Knot, Twist::R) => (Boundary::Op, Knot),
            (Boundary::Op, Knot, Twist::R) => (Boundary::Up, Knot),
            (Boundary::Ri, Link, Twist::R) => (Boundary::Ri, Knot),
            (Boundary::Ri, Knot, Twist::R) => (Boundary::Ri, Link),
            (Boundary::Op, Link, Twist::R) => (Boundary::Up, Link),
            (Boundary::Up, Link, Twist::R) => (Boundary::Op, Link),
        };
        TangleClass { boundary: b, connectivity: c }
    }

    /// Whether the oriented tangle can be closed north-south.
    pub fn ns_closable(&self) -> bool {
        self.boundary != Boundary::Ri
    }
}

impl fmt::Display for TangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.connectivity {
            Connectivity::Knot => 'k',
            Connectivity::Link => 'l',
        };
        write!(f, "{}{}", self.boundary, c)
    }
}

pub fn classify(cf: &ContinuedFraction) -> TangleClass {
    cf.twists().into_iter().fold(TangleClass::TRIVIAL, TangleClass::after)
}

/// Oriented equivalence of `p/q` and `p/q'`: `q = q'` or `q q' = 1 mod 2p`.
pub fn oriented_equivalent(p: u64, q: u64, q2: u64) -> bool {
    q == q2 || (q as u128 * q2 as u128) % (2 * p as u128) == 1
}

/// How the pipelines realize a slope: the building continued fraction, and
/// whether the result must be mirrored back. Knot slopes whose tangle ends
/// in an RI configuration cannot be closed north-south, so an equivalent
/// slope is used (the inverse, or else the mirror image).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub slope: Slope,
    pub used: Slope,
    pub cf: ContinuedFraction,
    pub mirrored: bool,
}

pub fn presentation(s: Slope) -> Result<Presentation> {
    let direct = [(s, false), (s.inverse(), false), (s.mirror(), true), (s.mirror().inverse(), true)];
    for (cand, mirrored) in direct {
        let cf = cf_expand(cand)?;
        if classify(&cf).ns_closable() {
            return Ok(Presentation { slope: s, used: cand, cf, mirrored });
        }
    }
    Err(Error::Hypothesis(format!("no north-south closable presentation of {s}")))
}

/// All slopes `p/q` with `p > q >= 1` (and the unknot `1/1` when `with_unknot`)
/// whose alternating diagram has at most `budget` crossings.
pub fn slopes_up_to(budget: u64, with_unknot: bool) -> Vec<Slope> {
    let mut out = Vec::new();
    if with_unknot {
        out.push(Slope { p: 1, q: 1 });
    }
    for p in 2..=fib(budget + 1) {
        for q in 1..p {
            if p.gcd(&q) == 1 {
                let s = Slope { p, q };
                if s.crossings() <= budget {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn fib(n: u64) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let t = a + b;
        a = b;
        b = t;
    }
    a
}

/// Rational knots with at most `budget` crossings, one per knot type up to
/// mirror image; the representative is the smallest `q` among
/// `±q^{±1} mod p`.
pub fn enumerate_rational_knots(budget: u64) -> Vec<Slope> {
    let mut out = Vec::new();
    for s in slopes_up_to(budget, false) {
        if !s.is_knot() {
            continue;
        }
        let class = [s.q, s.inverse().q, s.mirror().q, s.mirror().inverse().q];
        if class.iter().all(|&q| q >= s.q) {
            out.push(s);
        }
    }
    out
}
