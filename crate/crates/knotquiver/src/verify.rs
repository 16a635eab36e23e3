//! Checks quiver data against the skein-theoretic invariants color by color.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{q2_pochhammer, BinomialTable};
use crate::quiverstate::{for_each_composition, Pipeline, QuiverData};
use crate::skein::framed_reduced_homfly;
use crate::tangles::Slope;
use crate::{knotpipeline, Frac, Poly};

/// `sum_{|d|=j} (-q)^{q.d} a^{a.d} q^{d.Q.d} [j; d]` for antisymmetric data.
/// Equals `(q^2;q^2)_j` times the `x^j` coefficient of the quiver series.
pub fn motivic_sum(qd: &QuiverData, j: usize) -> Poly {
    motivic_sums(qd, j).pop().expect("non-empty")
}

/// [`motivic_sum`] for every color up to `order`.
pub fn motivic_sums(qd: &QuiverData, order: usize) -> Vec<Poly> {
    let qd = qd.to_antisymmetric();
    let table = BinomialTable::new(order);
    let n = qd.vertices();
    (0..=order)
        .map(|j| {
            let mut acc = Poly::zero();
            for_each_composition(n, j, &mut |d| {
                let (mut s, mut a, mut q) = (0, 0, 0);
                for x in 0..n {
                    let dx = d[x] as i64;
                    if dx == 0 {
                        continue;
                    }
                    s += qd.q_vec[x] * dx;
                    a += qd.a_vec[x] * dx;
                    q += qd.quiver[x][x] * dx * dx;
                    for y in x + 1..n {
                        q += (qd.quiver[x][y] + qd.quiver[y][x]) * dx * d[y] as i64;
                    }
                }
                acc += &(&Poly::signed_monomial(s, a, q) * &table.multinomial(d));
            });
            acc
        })
        .collect()
}

/// The `x^j` coefficient of the quiver series as a fraction.
pub fn expand_motivic(qd: &QuiverData, order: usize) -> Result<Vec<Frac>> {
    motivic_sums(qd, order)
        .into_iter()
        .enumerate()
        .map(|(j, p)| Frac::new(p, q2_pochhammer(j)))
        .collect()
}

/// What the motivic sum should be at color `j`.
pub fn expected_sum(qd: &QuiverData, j: usize) -> Result<Poly> {
    let p = framed_reduced_homfly(qd.origin, j, qd.framing)?;
    let target = match qd.pipeline {
        Pipeline::Knot => p,
        Pipeline::Link => p.mul_poly(&q2_pochhammer(j)),
    };
    target.to_poly().ok_or_else(|| Error::InexactDivision(format!("color {j} invariant is not a polynomial")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub color: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p: u64,
    pub q: u64,
    pub pipeline: Pipeline,
    pub vertices: usize,
    pub colors: Vec<usize>,
    pub matches: Vec<bool>,
    pub passed: bool,
    pub first_mismatch: Option<Mismatch>,
    /// Left out of the JSON so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Compares the quiver data with the invariants for colors `colors`.
pub fn verify_data(qd: &QuiverData, colors: std::ops::RangeInclusive<usize>) -> Result<VerificationReport> {
    let start = Instant::now();
    let sums = motivic_sums(qd, *colors.end());
    let mut first_mismatch = None;
    let mut matches = Vec::new();
    for j in colors.clone() {
        let expected = expected_sum(qd, j)?;
        matches.push(expected == sums[j]);
        if expected != sums[j] && first_mismatch.is_none() {
            first_mismatch = Some(Mismatch { color: j, expected: expected.to_string(), actual: sums[j].to_string() });
        }
    }
    Ok(VerificationReport {
        p: qd.origin.p,
        q: qd.origin.q,
        pipeline: qd.pipeline,
        vertices: qd.vertices(),
        colors: colors.collect(),
        matches,
        passed: first_mismatch.is_none(),
        first_mismatch,
        elapsed: start.elapsed(),
    })
}

pub fn verify_knot(s: Slope, max_color: usize) -> Result<VerificationReport> {
    verify_data(&knotpipeline::knot_quiver(s)?, 0..=max_color)
}

pub fn verify_link(s: Slope, max_color: usize) -> Result<VerificationReport> {
    verify_data(&knotpipeline::link_quiver(s)?, 0..=max_color)
}
