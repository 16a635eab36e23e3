//! Exact checks of the q-series and closure identities the algorithms rely on.
//! Each function returns whether the identity holds for the given parameters.

use num_bigint::BigInt;
use num_traits::One;

use crate::qseries::{pochhammer, q2_pochhammer, qbinom_plus, qmultinomial, QFraction, TruncatedSeries};
use crate::skein::{Closure, SkeinElement};
use crate::tangles::{Boundary, Twist};
use crate::{Frac, Poly as P};

/// `(x^2;q^2)_{d_1+...+d_k}` split over the parts `d_i`, with
/// `x = q^xq a^xa`, both sides multiplied by `prod (q^2;q^2)_{d_i}`.
pub fn absorption_holds(ds: &[usize], xq: i64, xa: i64) -> bool {
    let one = BigInt::from(1);
    let total: usize = ds.iter().sum();
    let lhs = pochhammer(&one, 2 * xq, 2 * xa, 2, total);
    let common = ds.iter().fold(P::one(), |acc, &d| &acc * &q2_pochhammer(d));
    let mut rhs = P::zero();
    let mut alphas = vec![0usize; ds.len()];
    loop {
        let sa: usize = alphas.iter().sum();
        let mut e = xq * 2 * sa as i64 - sa as i64;
        e += alphas.iter().map(|&a| (a * a) as i64).sum::<i64>();
        let mut prefix = 0;
        for i in 0..ds.len().saturating_sub(1) {
            prefix += ds[i];
            e += 2 * (alphas[i + 1] * prefix) as i64;
        }
        let sign = if sa.is_multiple_of(2) { one.clone() } else { -one.clone() };
        let mut term = P::monomial(sign, e, 2 * xa * sa as i64);
        let den = ds.iter().zip(&alphas).fold(P::one(), |acc, (&d, &a)| {
            &(&acc * &q2_pochhammer(a)) * &q2_pochhammer(d - a)
        });
        term = &term * &common.div_exact(&den).unwrap();
        rhs += &term;
        let mut i = 0;
        while i < ds.len() {
            if alphas[i] < ds[i] {
                alphas[i] += 1;
                break;
            }
            alphas[i] = 0;
            i += 1;
        }
        if i == ds.len() {
            break;
        }
    }
    lhs == rhs
}

/// `[sum a; b]` as a sum over matrices with row sums `b` and column sums `a`.
pub fn splitting_holds(a_parts: &[usize], b_parts: &[usize]) -> bool {
    // [sum a; b] = sum over matrices j[l][v] with row sums b_l, column sums a_v
    // of q^X prod_v [a_v; j_{1v}..j_{pv}].
    let n: usize = a_parts.iter().sum();
    let lhs = qmultinomial::<BigInt>(n, b_parts).unwrap();
    let p = b_parts.len();
    let m = a_parts.len();
    let mut rhs = P::zero();
    let mut cols: Vec<Vec<usize>> = Vec::new();
    fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            compositions(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let per_col: Vec<Vec<Vec<usize>>> = a_parts
        .iter()
        .map(|&a| {
            let mut out = Vec::new();
            compositions(a, p, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut idx = vec![0usize; m];
    loop {
        cols.clear();
        for v in 0..m {
            cols.push(per_col[v][idx[v]].clone());
        }
        let rows_ok = (0..p).all(|l| cols.iter().map(|c| c[l]).sum::<usize>() == b_parts[l]);
        if rows_ok {
            let mut x = 0i64;
            for l1 in 0..p {
                for l2 in l1 + 1..p {
                    for u1 in 0..m {
                        for u2 in u1 + 1..m {
                            x += 2 * (cols[u1][l1] * cols[u2][l2]) as i64;
                        }
                    }
                }
            }
            let mut term = P::q_pow(x);
            for v in 0..m {
                term = &term * &qmultinomial::<BigInt>(a_parts[v], &cols[v]).unwrap();
            }
            rhs += &term;
        }
        let mut i = 0;
        while i < m {
            idx[i] += 1;
            if idx[i] < per_col[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    lhs == rhs
}

/// Summing `(-q)^a q^{a^2+2da} x^{a+b} / ((q^2;q^2)_a (q^2;q^2)_b)` over `a, b`
/// gives `sum_c (q^2;q^2)_{c+d} / ((q^2;q^2)_c (q^2;q^2)_d) x^c`, up to `x^order`.
pub fn pair_summation_holds(d: usize, order: usize) -> bool {
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let dd = q2_pochhammer::<BigInt>(d);
    for n in 0..=order {
        // common denominator (q^2;q^2)_n
        let mut l = P::zero();
        for a in 0..=n {
            let b = n - a;
            let e = (a * a + 2 * d * a) as i64;
            let w = P::signed_monomial(a as i64, 0, e);
            l += &(&w * &qmultinomial::<BigInt>(n, &[a, b]).unwrap());
        }
        lhs.push(QFraction::new(l, q2_pochhammer(n)).unwrap());
        let r = q2_pochhammer::<BigInt>(n + d).div_exact(&dd).unwrap();
        rhs.push(QFraction::new(r, q2_pochhammer(n)).unwrap());
    }
    TruncatedSeries::new(lhs) == TruncatedSeries::new(rhs)
}

/// `(x^2;q^2)_k` expanded with positive q-binomials.
pub fn q_binomial_expansion_holds(k: usize, xq: i64, xa: i64) -> bool {
    let one = BigInt::from(1);
    let lhs = pochhammer(&one, 2 * xq, 2 * xa, 2, k);
    let mut rhs = P::zero();
    for i in 0..=k {
        let sign = if i % 2 == 0 { one.clone() } else { -one.clone() };
        let ii = i as i64;
        let t = P::monomial(sign, 2 * xq * ii + ii * ii - ii, 2 * xa * ii);
        rhs += &(&t * &qbinom_plus(k, ii).unwrap());
    }
    lhs == rhs
}


/// `Cl_NS(T UP[j,k])` in closed form.
pub fn closure_of_twisted_up_holds(j: usize, k: usize) -> bool {
    let Ok(lhs) = SkeinElement::basis(j, Boundary::Up, k).twist(Twist::T).close(Closure::NorthSouth) else {
        return false;
    };
    let (ji, ki) = (j as i64, k as i64);
    let num = &(&P::signed_monomial(ki - ji, -ji, 2 * ki * ki + ji * ji) * &qbinom_plus(j, ki).unwrap())
        * &pochhammer(&BigInt::one(), 2 - 2 * ji - 2 * ki, 2, 2, k);
    Frac::new(num, q2_pochhammer(k)).is_ok_and(|rhs| lhs == rhs)
}

/// `Cl_NS(T RI[j,k])` in closed form.
pub fn closure_of_twisted_right_holds(j: usize, k: usize) -> bool {
    let Ok(lhs) = SkeinElement::basis(j, Boundary::Ri, k).twist(Twist::T).close(Closure::NorthSouth) else {
        return false;
    };
    let (ji, ki) = (j as i64, k as i64);
    let num = &(&P::signed_monomial(ki, 2 * ki - ji, -4 * ki * ji + 2 * ki * ki + ji * ji) * &qbinom_plus(j, ki).unwrap())
        * &pochhammer(&BigInt::one(), 2 - 4 * ji + 2 * ki, 2, 2, j - k);
    Frac::new(num, q2_pochhammer(j - k)).is_ok_and(|rhs| lhs == rhs)
}
