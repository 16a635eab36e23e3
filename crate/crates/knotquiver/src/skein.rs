//! Skein-module oracle: colored tangle evaluations in the basis webs
//! `UP[j,k]`, `OP[j,k]`, `RI[j,k]`, the six twist rules, and the closures.
//! Coefficients stay in `Z[q^±, a^±]`; only closures introduce denominators.

use num_bigint::BigInt;
use num_traits::One;

use crate::diagram::ClosedDiagram;
use crate::error::{Error, Result};
use crate::qseries::{pochhammer, q2_pochhammer, qbinom_plus};
use crate::tangles::{presentation, Boundary, ContinuedFraction, Slope, Twist};
use crate::{Frac, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    NorthSouth,
    EastWest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinElement {
    pub color: usize,
    pub boundary: Boundary,
    /// Coefficient of `X[j,k]` for `k = 0..=j`.
    pub coeffs: Vec<Poly>,
}

fn binom(n: usize, k: usize) -> Poly {
    qbinom_plus(n, k as i64).expect("Gaussian binomials divide exactly")
}

impl SkeinElement {
    pub fn basis(color: usize, boundary: Boundary, k: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); color + 1];
        coeffs[k] = Poly::one();
        SkeinElement { color, boundary, coeffs }
    }

    /// The trivial tangle `UP[j,0]`.
    pub fn trivial(color: usize) -> Self {
        Self::basis(color, Boundary::Up, 0)
    }

    pub fn twist(&self, kind: Twist) -> Self {
        let j = self.color as i64;
        let mut out = vec![Poly::zero(); self.color + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ki = k as i64;
            let range: Vec<usize> = match kind {
                Twist::T => (k..=self.color).collect(),
                Twist::R => (0..=k).collect(),
            };
            for h in range {
                let hi = h as i64;
                // (sign exponent of -q, a exponent, extra q exponent, binomial)
                let (s, a, e, b) = match (self.boundary, kind) {
                    (Boundary::Up, Twist::T) => (hi - j, 0, ki * ki, binom(h, k)),
                    (Boundary::Up, Twist::R) => {
                        (hi - j, hi - j, -2 * ki * hi + ki * ki + j * j, binom(self.color - h, k - h))
                    }
                    (Boundary::Op, Twist::T) => (hi, ki, ki * ki - 2 * j * ki, binom(h, k)),
                    (Boundary::Op, Twist::R) => (
                        hi - j,
                        ki - j,
                        2 * hi * (j - ki) + (ki - j) * (ki - j),
                        binom(self.color - h, k - h),
                    ),
                    (Boundary::Ri, Twist::T) => (hi, hi, ki * ki - 2 * j * hi, binom(h, k)),
                    (Boundary::Ri, Twist::R) => {
                        (hi, 0, hi * (2 * j - 2 * ki) + ki * ki - j * j, binom(self.color - h, k - h))
                    }
                };
                let w = Poly::signed_monomial(s, a, e);
                out[h] += &(&(&w * &b) * c);
            }
        }
        SkeinElement { color: self.color, boundary: self.boundary.after(kind), coeffs: out }
    }

    /// Multiplies the `X[j,k]` coefficient by `[j,k]_+`.
    pub fn rescale(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| c * &binom(self.color, k)).collect();
        SkeinElement { coeffs, ..self.clone() }
    }

    pub fn unrescale(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.div_exact(&binom(self.color, k)).ok_or_else(|| Error::InexactDivision("unrescale".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SkeinElement { coeffs, ..self.clone() })
    }

    pub fn close(&self, direction: Closure) -> Result<Frac> {
        let j = self.color;
        let mut acc = Frac::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &closure_scalar(self.boundary, direction, j, k)?.mul_poly(c);
            }
        }
        Ok(acc)
    }
}

/// Closure of a single basis web (reduced evaluation).
pub fn closure_scalar(boundary: Boundary, direction: Closure, j: usize, k: usize) -> Result<Frac> {
    let one = BigInt::one();
    let (ji, ki) = (j as i64, k as i64);
    let (mono, poch, den) = match (boundary, direction) {
        (Boundary::Up, Closure::NorthSouth) => (
            Poly::monomial(one.clone(), ji * ji + ki * ki, -ji),
            pochhammer(&one, 2 - 2 * ji - 2 * ki, 2, 2, j),
            q2_pochhammer(j),
        ),
        (Boundary::Ri, Closure::EastWest) => (
            Poly::monomial(one.clone(), ji * ji + (ji - ki) * (ji - ki), -ji),
            pochhammer(&one, 2 - 4 * ji + 2 * ki, 2, 2, j),
            q2_pochhammer(j),
        ),
        (Boundary::Op, Closure::NorthSouth) => (
            Poly::monomial(one.clone(), (ji - ki) * (ji - ki), ki - ji),
            pochhammer(&one, 2 - 2 * ji, 2, 2, j - k),
            q2_pochhammer(j - k),
        ),
        (Boundary::Op, Closure::EastWest) => (
            Poly::monomial(one.clone(), ki * ki, -ki),
            pochhammer(&one, 2 - 2 * ji, 2, 2, k),
            q2_pochhammer(k),
        ),
        (b, d) => {
            return Err(Error::IllegalClosure { direction: format!("{d:?}"), boundary: b.to_string() });
        }
    };
    Frac::new(&(&mono * &poch) * &binom(j, k), den)
}

/// `f(j) = (-q)^{-j} a^{-j} q^{j^2}`, the framing factor of a positive kink.
pub fn framing_factor(j: usize) -> Poly {
    let j = j as i64;
    Poly::signed_monomial(-j, -j, j * j)
}

/// Integer power of the framing factor (negative powers are monomials too).
pub fn framing_power(j: usize, n: i64) -> Poly {
    let ji = j as i64;
    Poly::signed_monomial(-ji * n, -ji * n, ji * ji * n)
}

/// `⟨τ⟩_j`: the twists of `cf` applied to `UP[j,0]` in building order.
pub fn tangle_element(cf: &ContinuedFraction, j: usize) -> SkeinElement {
    cf.twists().into_iter().fold(SkeinElement::trivial(j), |e, t| e.twist(t))
}

/// North-south closure of `⟨τ⟩_j` in the blackboard framing of the diagram.
pub fn framed_homfly(cf: &ContinuedFraction, j: usize) -> Result<Frac> {
    tangle_element(cf, j).close(Closure::NorthSouth)
}

/// Reduced `j`-colored HOMFLY-PT polynomial, framing-normalized so that
/// the unknot gives 1. Knot values are checked to clear to polynomials.
pub fn reduced_homfly(s: Slope, j: usize) -> Result<Frac> {
    framed_reduced_homfly(s, j, 0)
}

/// The reduced invariant times `f(j)^framing`.
pub fn framed_reduced_homfly(s: Slope, j: usize, framing: i64) -> Result<Frac> {
    let pr = presentation(s)?;
    let writhe = ClosedDiagram::ns_closure(&pr.cf).self_writhe();
    let raw = framed_homfly(&pr.cf, j)?;
    // mirroring negates the writhe, so normalize before mapping back
    let mut value = raw.mul_poly(&framing_power(j, -writhe));
    if pr.mirrored {
        value = value.invert_q().map_num(Poly::invert_a);
    }
    value = value.mul_poly(&framing_power(j, framing));
    if s.is_knot() {
        let p = value
            .to_poly()
            .ok_or_else(|| Error::InexactDivision(format!("colored invariant of {s} at j={j} is not a polynomial")))?;
        return Ok(Frac::from_poly(p));
    }
    Ok(value.normalized())
}

/// Unreduced unknot `a^{-j} q^j (a^2;q^2)_j / (q^2;q^2)_j`, kept for tests.
pub fn unreduced_unknot(j: usize) -> Frac {
    let one = BigInt::one();
    let ji = j as i64;
    let num = &Poly::monomial(one.clone(), ji, -ji) * &pochhammer(&one, 0, 2, 2, j);
    Frac::new(num, q2_pochhammer(j)).expect("q-only denominator")
}
