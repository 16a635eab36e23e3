//! Quiver-form generating functions for rescaled skein elements.
//!
//! A [`QuiverState`] with linear data `S`, `A`, Pochhammer flags `K` and a
//! quadratic form `M` denotes
//!
//! ```text
//! sum_d (-q)^{S.d} a^{A.d} q^{d M d} (q^2;q^2)_{K.d} [|d|; d]_+ X[|d|, sum_active d]
//! ```
//!
//! which is the rescaled skein element whose `X[j,k]` coefficient is
//! `c_k [j,k]_+`. `M` may be asymmetric; only `M + M^T` matters.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{q2_pochhammer, BinomialTable};
use crate::skein::SkeinElement;
use crate::tangles::{Boundary, Slope, Twist};
use crate::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexRecord {
    pub active: bool,
    /// Member of the single extra `(q^2;q^2)_{K.d}` numerator.
    pub extra_poch: bool,
    pub s: i64,
    pub a: i64,
}

impl IndexRecord {
    fn new(active: bool, s: i64, a: i64) -> Self {
        IndexRecord { active, extra_poch: false, s, a }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverState {
    pub obj: Boundary,
    pub indices: Vec<IndexRecord>,
    pub m: Vec<Vec<i64>>,
}

/// `(sign q^q a^a q^{2 lin.d}; q^2)_{sum of targets}` in the current indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub sign: i64,
    pub q: i64,
    pub a: i64,
    pub lin: Vec<i64>,
    pub targets: Vec<usize>,
}

/// Which side of the split gets the cross term `2 alpha_i beta_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitOrder {
    /// `l < i` in target order.
    Forward,
    /// `l > i` in target order.
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// New indices go right after the last target.
    AfterTargets,
    End,
}

#[derive(Clone, Debug)]
pub struct Absorbed {
    pub state: QuiverState,
    /// New position of every old index (the `beta` part for targets).
    pub beta: Vec<usize>,
    /// Position of the `alpha` part of each target, in target order.
    pub alpha: Vec<usize>,
}

/// Linear form `j*J + k*K + h*H` in the index sums `j` (all), `k`, `h`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Lin {
    pub j: i64,
    pub k: i64,
    pub h: i64,
}

/// Quadratic form in the index sums `j`, `k`, `h`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Quad {
    pub jj: i64,
    pub kk: i64,
    pub hh: i64,
    pub jk: i64,
    pub jh: i64,
    pub kh: i64,
}

/// `(-q)^{sign} a^{a} q^{quad}` with exponents depending on `j`, `k`, `h`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct RuleMono {
    pub sign: Lin,
    pub a: Lin,
    pub quad: Quad,
}

/// Monomial of the plain twist rule in the rescaled basis. For `T`, `k` is the
/// old active sum and `h` the new one; for `R` likewise with `h <= k`.
pub(crate) fn plain_rule(obj: Boundary, kind: Twist) -> RuleMono {
    let l = |j, k, h| Lin { j, k, h };
    match (obj, kind) {
        (Boundary::Up, Twist::T) => {
            RuleMono { sign: l(-1, 0, 1), a: Lin::default(), quad: Quad { kk: 1, ..Default::default() } }
        }
        (Boundary::Up, Twist::R) => RuleMono {
            sign: l(-1, 0, 1),
            a: l(-1, 0, 1),
            quad: Quad { kh: -2, kk: 1, jj: 1, ..Default::default() },
        },
        (Boundary::Op, Twist::T) => {
            RuleMono { sign: l(0, 0, 1), a: l(0, 1, 0), quad: Quad { kk: 1, jk: -2, ..Default::default() } }
        }
        (Boundary::Op, Twist::R) => RuleMono {
            sign: l(-1, 0, 1),
            a: l(-1, 1, 0),
            quad: Quad { jh: 2, kh: -2, kk: 1, jk: -2, jj: 1, ..Default::default() },
        },
        (Boundary::Ri, Twist::T) => {
            RuleMono { sign: l(0, 0, 1), a: l(0, 0, 1), quad: Quad { kk: 1, jh: -2, ..Default::default() } }
        }
        (Boundary::Ri, Twist::R) => RuleMono {
            sign: l(0, 0, 1),
            a: Lin::default(),
            quad: Quad { jh: 2, kh: -2, kk: 1, jj: -1, ..Default::default() },
        },
    }
}

/// Monomial and Pochhammer of the product-form twists, in terms of `j` and
/// the old active sum `k`. The Pochhammer is `(q^2 a^{a} q^{2 lin}; q^2)`.
fn product_rule(obj: Boundary, kind: Twist) -> (RuleMono, i64, Lin) {
    let l = |j, k| Lin { j, k, h: 0 };
    let q = |jj, kk, jk| Quad { jj, kk, jk, ..Default::default() };
    let mono = |sign, a, quad| RuleMono { sign, a, quad };
    match (obj, kind) {
        (Boundary::Up, Twist::T) => (mono(l(-1, 1), l(0, 0), q(0, 1, 0)), 0, l(0, 1)),
        (Boundary::Op, Twist::T) => (mono(l(0, 1), l(0, 1), q(0, 1, -2)), 0, l(0, 1)),
        (Boundary::Ri, Twist::T) => (mono(l(0, 1), l(0, 1), q(0, 1, -2)), 1, l(-1, 1)),
        (Boundary::Up, Twist::R) => (mono(l(-1, 0), l(-1, 0), q(1, 0, 0)), 1, l(0, -1)),
        (Boundary::Op, Twist::R) => (mono(l(-1, 0), l(-1, 1), q(1, 0, -2)), 0, l(1, -1)),
        (Boundary::Ri, Twist::R) => (mono(l(0, 0), l(0, 0), q(-1, 0, 0)), 0, l(1, -1)),
    }
}

fn combine(l: Lin, uj: &[i64], uk: &[i64], uh: &[i64]) -> Vec<i64> {
    (0..uj.len()).map(|i| l.j * uj[i] + l.k * uk[i] + l.h * uh[i]).collect()
}

impl QuiverState {
    /// The trivial tangle: one inactive index, everything zero.
    pub fn trivial() -> Self {
        QuiverState { obj: Boundary::Up, indices: vec![IndexRecord::new(false, 0, 0)], m: vec![vec![0]] }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn actives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.indices[i].active).collect()
    }

    pub fn inactives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.indices[i].active).collect()
    }

    pub fn poch_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.indices[i].extra_poch).collect()
    }

    pub fn indicator(&self, set: &[usize]) -> Vec<i64> {
        let mut u = vec![0; self.len()];
        for &i in set {
            u[i] = 1;
        }
        u
    }

    pub fn set_poch(&mut self, set: &[usize]) {
        for r in &mut self.indices {
            r.extra_poch = false;
        }
        for &i in set {
            self.indices[i].extra_poch = true;
        }
    }

    /// New state whose index `i` is a copy of old index `origins[i]`.
    pub(crate) fn rebuild(&self, origins: &[usize]) -> Self {
        let indices = origins.iter().map(|&o| self.indices[o]).collect();
        let m = origins.iter().map(|&x| origins.iter().map(|&y| self.m[x][y]).collect()).collect();
        QuiverState { obj: self.obj, indices, m }
    }

    /// Adds `2c d_i d_j` to the quadratic form.
    pub(crate) fn add_sym(&mut self, i: usize, j: usize, c: i64) {
        if i == j {
            self.m[i][i] += 2 * c;
        } else {
            self.m[i][j] += c;
            self.m[j][i] += c;
        }
    }

    /// Adds `c (u.d)(v.d)`.
    pub(crate) fn add_quadratic(&mut self, c: i64, u: &[i64], v: &[i64]) {
        if c == 0 {
            return;
        }
        let n = self.len();
        let (c, both) = if u == v || c % 2 != 0 { (c, false) } else { (c / 2, true) };
        for x in 0..n {
            for y in 0..n {
                let w = u[x] * v[y];
                if w != 0 {
                    self.m[x][y] += c * w;
                    if both {
                        self.m[y][x] += c * w;
                    }
                }
            }
        }
    }

    pub(crate) fn apply_mono(&mut self, r: &RuleMono, uj: &[i64], uk: &[i64], uh: &[i64]) {
        let s = combine(r.sign, uj, uk, uh);
        let a = combine(r.a, uj, uk, uh);
        for (i, rec) in self.indices.iter_mut().enumerate() {
            rec.s += s[i];
            rec.a += a[i];
        }
        let q = r.quad;
        self.add_quadratic(q.jj, uj, uj);
        self.add_quadratic(q.kk, uk, uk);
        self.add_quadratic(q.hh, uh, uh);
        self.add_quadratic(q.jk, uj, uk);
        self.add_quadratic(q.jh, uj, uh);
        self.add_quadratic(q.kh, uk, uh);
    }

    /// One crossing by the plain twist rules. `T` splits each inactive index
    /// into a new active and an inactive part, `R` splits each active index
    /// into a kept active and a new inactive part.
    pub fn apply_twist(&self, kind: Twist) -> Self {
        let p = self.actives();
        let n = self.inactives();
        let (np, nn) = (p.len(), n.len());
        let mut st = match kind {
            Twist::T => {
                let origins: Vec<usize> = p.iter().chain(&n).chain(&n).copied().collect();
                let mut st = self.rebuild(&origins);
                for i in 0..np + nn {
                    st.indices[i].active = true;
                }
                for i in 0..nn {
                    for l in 0..i {
                        st.add_sym(np + i, np + nn + l, 1);
                    }
                }
                st
            }
            Twist::R => {
                let origins: Vec<usize> = p.iter().chain(&p).chain(&n).copied().collect();
                let mut st = self.rebuild(&origins);
                for i in np..st.len() {
                    st.indices[i].active = false;
                }
                for i in 0..np {
                    for l in 0..i {
                        st.add_sym(i, np + l, 1);
                    }
                }
                st
            }
        };
        let len = st.len();
        let uj = vec![1; len];
        let (uk, uh): (Vec<i64>, Vec<i64>) = match kind {
            Twist::T => ((0..len).map(|i| (i < np) as i64).collect(), (0..len).map(|i| (i < np + nn) as i64).collect()),
            Twist::R => ((0..len).map(|i| (i < 2 * np) as i64).collect(), (0..len).map(|i| (i < np) as i64).collect()),
        };
        st.apply_mono(&plain_rule(self.obj, kind), &uj, &uk, &uh);
        st.obj = self.obj.after(kind);
        st
    }

    /// Product-form twist: multiply by the rule's Pochhammer and absorb it.
    /// The result expands to `q^{h^2}` times the plain-route coefficient of
    /// `X[j,h]` when started from the trivial state.
    pub fn apply_twist_product(&self, kind: Twist) -> Result<Self> {
        let (mono, pa, lin) = product_rule(self.obj, kind);
        let uj = vec![1; self.len()];
        let uk = self.indicator(&self.actives());
        let mut st = self.clone();
        st.apply_mono(&mono, &uj, &uk, &uk);
        let targets = match kind {
            Twist::T => self.inactives(),
            Twist::R => self.actives(),
        };
        let spec = PochhammerSpec { sign: 1, q: 2, a: pa, lin: combine(lin, &uj, &uk, &uk), targets };
        let ab = st.absorb_pochhammer(&spec, SplitOrder::Forward, Placement::AfterTargets)?;
        let mut st = ab.state;
        match kind {
            Twist::T => {
                for &i in &ab.alpha {
                    st.indices[i].active = true;
                }
            }
            Twist::R => {
                for &t in &spec.targets {
                    st.indices[ab.beta[t]].active = false;
                }
            }
        }
        st.obj = self.obj.after(kind);
        Ok(st)
    }

    /// Absorbs a Pochhammer symbol into the quiver form by splitting every
    /// target index `d = alpha + beta`.
    pub fn absorb_pochhammer(&self, p: &PochhammerSpec, order: SplitOrder, placement: Placement) -> Result<Absorbed> {
        let n = self.len();
        if p.lin.len() != n {
            return Err(Error::Pochhammer(format!("{} linear coefficients for {n} indices", p.lin.len())));
        }
        if p.sign.abs() != 1 || p.sign * if p.q % 2 == 0 { 1 } else { -1 } != 1 {
            return Err(Error::Pochhammer(format!("sign {} with q^{} does not give a quiver form", p.sign, p.q)));
        }
        let mut seen = vec![false; n];
        for &t in &p.targets {
            if t >= n || seen[t] {
                return Err(Error::Pochhammer(format!("bad target list {:?}", p.targets)));
            }
            seen[t] = true;
        }
        if p.targets.is_empty() {
            return Ok(Absorbed { state: self.clone(), beta: (0..n).collect(), alpha: vec![] });
        }
        let nt = p.targets.len();
        let ins = match placement {
            Placement::AfterTargets => p.targets.iter().max().unwrap() + 1,
            Placement::End => n,
        };
        let origins: Vec<usize> = (0..ins).chain(p.targets.iter().copied()).chain(ins..n).collect();
        let beta: Vec<usize> = (0..n).map(|i| if i < ins { i } else { i + nt }).collect();
        let alpha: Vec<usize> = (0..nt).map(|i| ins + i).collect();
        let mut st = self.rebuild(&origins);
        for (i, &ai) in alpha.iter().enumerate() {
            st.indices[ai].s += p.q - 1;
            st.indices[ai].a += p.a;
            st.m[ai][ai] += 1;
            for i2 in i + 1..nt {
                st.add_sym(ai, alpha[i2], 1);
                match order {
                    SplitOrder::Forward => st.add_sym(alpha[i2], beta[p.targets[i]], 1),
                    SplitOrder::Reverse => st.add_sym(ai, beta[p.targets[i2]], 1),
                }
            }
        }
        let target_pos: HashMap<usize, usize> = p.targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        for &ai in &alpha {
            for (y, &ly) in p.lin.iter().enumerate() {
                if ly == 0 {
                    continue;
                }
                st.add_sym(ai, beta[y], ly);
                if let Some(&ti) = target_pos.get(&y) {
                    st.add_sym(ai, alpha[ti], ly);
                }
            }
        }
        Ok(Absorbed { state: st, beta, alpha })
    }

    /// The monomial `(-q)^{S.d} a^{A.d} q^{dMd}` of one summand.
    pub(crate) fn exponents(&self, d: &[usize]) -> (i64, i64, i64) {
        let mut s = 0;
        let mut a = 0;
        let mut q = 0;
        for (x, &dx) in d.iter().enumerate() {
            if dx == 0 {
                continue;
            }
            let dx = dx as i64;
            s += self.indices[x].s * dx;
            a += self.indices[x].a * dx;
            for (y, &dy) in d.iter().enumerate() {
                q += self.m[x][y] * dx * dy as i64;
            }
        }
        (s, a, q)
    }

    /// Brute-force expansion through color `order`: one rescaled skein
    /// element per color.
    pub fn expand(&self, order: usize) -> Vec<SkeinElement> {
        self.expand_with(order, |_| Poly::one())
    }

    /// As [`QuiverState::expand`] with every summand multiplied by `extra(d)`.
    pub fn expand_with(&self, order: usize, extra: impl Fn(&[usize]) -> Poly) -> Vec<SkeinElement> {
        let table = BinomialTable::<BigInt>::new(order);
        let poch: Vec<Poly> = (0..=order).map(q2_pochhammer).collect();
        let mut out = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut coeffs = vec![Poly::zero(); j + 1];
            for_each_composition(self.len(), j, &mut |d| {
                let (s, a, q) = self.exponents(d);
                let kd: usize = d.iter().zip(&self.indices).filter(|(_, r)| r.extra_poch).map(|(x, _)| x).sum();
                let k: usize = d.iter().zip(&self.indices).filter(|(_, r)| r.active).map(|(x, _)| x).sum();
                let w = &(&Poly::signed_monomial(s, a, q) * &poch[kd]) * &table.multinomial(d);
                coeffs[k] += &(&w * &extra(d));
            });
            out.push(SkeinElement { color: j, boundary: self.obj, coeffs });
        }
        out
    }

    /// North-south closure of a plain-route state (no extra Pochhammer),
    /// leaving a quiver form for `sum_j P_j x^j` in the blackboard framing.
    pub fn close_link(&self) -> Result<QuiverState> {
        if !self.poch_indices().is_empty() {
            return Err(Error::Hypothesis("link closure expects no extra Pochhammer factor".into()));
        }
        let n = self.len();
        let uj = vec![1i64; n];
        let act = self.actives();
        let inact = self.inactives();
        let uk = self.indicator(&act);
        let mut st = self.clone();
        match self.obj {
            Boundary::Up => {
                // a^{-j} q^{j^2+k^2} (a^2 q^{2-2j-2k};q^2)_j
                let mono = RuleMono {
                    sign: Lin::default(),
                    a: Lin { j: -1, ..Default::default() },
                    quad: Quad { jj: 1, kk: 1, ..Default::default() },
                };
                st.apply_mono(&mono, &uj, &uk, &uk);
                let lin = (0..n).map(|i| -uj[i] - uk[i]).collect();
                let spec = PochhammerSpec { sign: 1, q: 2, a: 2, lin, targets: (0..n).collect() };
                Ok(st.absorb_pochhammer(&spec, SplitOrder::Forward, Placement::End)?.state)
            }
            Boundary::Op => {
                // a^{k-j} q^{(j-k)^2} (q^{2+2(j-k)};q^2)_k (a^2 q^{2-2j};q^2)_{j-k}
                let mono = RuleMono {
                    sign: Lin::default(),
                    a: Lin { j: -1, k: 1, h: 0 },
                    quad: Quad { jj: 1, kk: 1, jk: -2, ..Default::default() },
                };
                st.apply_mono(&mono, &uj, &uk, &uk);
                let ui = self.indicator(&inact);
                let first = PochhammerSpec { sign: 1, q: 2, a: 0, lin: ui, targets: act };
                let ab = st.absorb_pochhammer(&first, SplitOrder::Forward, Placement::End)?;
                let st = ab.state;
                let lin = vec![-1; st.len()];
                let targets = inact.iter().map(|&i| ab.beta[i]).collect();
                let second = PochhammerSpec { sign: 1, q: 2, a: 2, lin, targets };
                Ok(st.absorb_pochhammer(&second, SplitOrder::Forward, Placement::End)?.state)
            }
            Boundary::Ri => Err(Error::IllegalClosure { direction: "NorthSouth".into(), boundary: "RI".into() }),
        }
    }

    /// Symmetrized quadratic form; fails if an off-diagonal pair has odd sum.
    pub fn symmetrized(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.len();
        let mut q = vec![vec![0; n]; n];
        for i in 0..n {
            q[i][i] = self.m[i][i];
            for j in i + 1..n {
                let sum = self.m[i][j] + self.m[j][i];
                if sum % 2 != 0 {
                    return Err(Error::Symmetrization { i, j, sum });
                }
                q[i][j] = sum / 2;
                q[j][i] = sum / 2;
            }
        }
        Ok(q)
    }

    /// Rows `(K, S, A)` in index order, actives first then inactives, as
    /// the triple notation prints them.
    pub fn triple(&self) -> (Vec<[i64; 3]>, Vec<[i64; 3]>) {
        let row = |i: usize| {
            let r = &self.indices[i];
            [r.extra_poch as i64, r.s, r.a]
        };
        (self.actives().into_iter().map(row).collect(), self.inactives().into_iter().map(row).collect())
    }
}

/// Calls `f` on every vector of `parts` non-negative integers summing to `total`.
pub(crate) fn for_each_composition(parts: usize, total: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(buf: &mut Vec<usize>, parts: usize, left: usize, f: &mut impl FnMut(&[usize])) {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for x in 0..=left {
            buf.push(x);
            rec(buf, parts, left - x, f);
            buf.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(parts), parts, total, f);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// One-column colors, as produced by the skein calculus.
    Antisymmetric,
    /// One-row colors, obtained by inverting `q`.
    Symmetric,
}

/// Which generating function the data encodes: `sum P_j x^j` for the link
/// route, `sum P_j / (q^2;q^2)_j x^j` for the knot route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Knot,
    Link,
}

/// Exported quiver data. The series `sum_d (-q)^{q.d} a^{a.d} q^{d Q d} x^{|d|} / prod (q^2;q^2)_{d_i}`
/// equals the route's generating function of `P_j f(j)^framing`, where
/// `P_j` and `f(j) = (-q)^{-j} a^{-j} q^{j^2}` are taken at `q^{-1}` in the
/// symmetric convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverData {
    pub origin: Slope,
    pub pipeline: Pipeline,
    pub convention: Convention,
    pub framing: i64,
    pub quiver: Vec<Vec<i64>>,
    pub a_vec: Vec<i64>,
    pub q_vec: Vec<i64>,
}

/// Permutation-invariant summary of one vertex: `(q, a, Q_ii, sorted row)`.
type RowKey = (i64, i64, i64, Vec<i64>);

impl QuiverData {
    pub fn from_state(st: &QuiverState, origin: Slope, pipeline: Pipeline, framing: i64) -> Result<Self> {
        Ok(QuiverData {
            origin,
            pipeline,
            convention: Convention::Antisymmetric,
            framing,
            quiver: st.symmetrized()?,
            a_vec: st.indices.iter().map(|r| r.a).collect(),
            q_vec: st.indices.iter().map(|r| r.s).collect(),
        })
    }

    pub fn vertices(&self) -> usize {
        self.q_vec.len()
    }

    /// Changes the framing by `f`, multiplying the series by `f(j)^f`.
    pub fn framing_shift(&self, f: i64) -> Self {
        let (ds, dq) = match self.convention {
            Convention::Antisymmetric => (-f, f),
            Convention::Symmetric => (f, -f),
        };
        QuiverData {
            framing: self.framing + f,
            quiver: self.quiver.iter().map(|row| row.iter().map(|x| x + dq).collect()).collect(),
            a_vec: self.a_vec.iter().map(|x| x - f).collect(),
            q_vec: self.q_vec.iter().map(|x| x + ds).collect(),
            ..self.clone()
        }
    }

    /// The shift that makes the smallest entry of `Q` zero.
    pub fn canonical_shift(&self) -> i64 {
        let min = self.quiver.iter().flatten().copied().min().unwrap_or(0);
        match self.convention {
            Convention::Antisymmetric => -min,
            Convention::Symmetric => min,
        }
    }

    pub fn to_canonical_frame(&self) -> Self {
        self.framing_shift(self.canonical_shift())
    }

    /// Passes to the symmetric convention by `q -> q^{-1}`.
    pub fn q_invert(&self) -> Result<Self> {
        if self.convention == Convention::Symmetric {
            return Err(Error::AlreadyInverted);
        }
        let mut out = self.substitute_inverse(false);
        out.convention = Convention::Symmetric;
        out.framing = self.framing;
        Ok(out)
    }

    /// Undoes [`QuiverData::q_invert`]; a no-op on antisymmetric data.
    pub fn to_antisymmetric(&self) -> Self {
        if self.convention == Convention::Antisymmetric {
            return self.clone();
        }
        let mut out = self.substitute_inverse(false);
        out.convention = Convention::Antisymmetric;
        out
    }

    /// Data for the mirror image: the series at `a^{-1}, q^{-1}` with the
    /// route's normalization restored.
    pub fn mirror(&self) -> Self {
        let mut out = self.substitute_inverse(true);
        out.origin = self.origin.mirror();
        out.framing = -self.framing;
        out
    }

    fn substitute_inverse(&self, invert_a: bool) -> Self {
        let n = self.vertices();
        // the knot route divides by (q^2;q^2)_j, whose inversion contributes
        // (-q)^{-j} q^{-j^2}; the link route has no such factor
        let (ds, off) = match self.pipeline {
            Pipeline::Knot => (0, -1),
            Pipeline::Link => (1, 0),
        };
        let quiver = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { -self.quiver[i][i] + ds } else { -self.quiver[i][j] + off })
                    .collect()
            })
            .collect();
        QuiverData {
            quiver,
            q_vec: self.q_vec.iter().map(|x| ds - x).collect(),
            a_vec: if invert_a { self.a_vec.iter().map(|x| -x).collect() } else { self.a_vec.clone() },
            ..self.clone()
        }
    }

    /// Equality up to a simultaneous permutation of vertices.
    pub fn equivalent(&self, other: &QuiverData) -> bool {
        let n = self.vertices();
        if n != other.vertices() {
            return false;
        }
        let key = |d: &QuiverData, i: usize| {
            let mut row = d.quiver[i].clone();
            row.sort_unstable();
            (d.q_vec[i], d.a_vec[i], d.quiver[i][i], row)
        };
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn search(
            i: usize,
            a: &QuiverData,
            b: &QuiverData,
            keys: &(Vec<RowKey>, Vec<RowKey>),
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if i == perm.len() {
                return true;
            }
            for c in 0..perm.len() {
                if used[c] || keys.0[i] != keys.1[c] {
                    continue;
                }
                if (0..i).any(|l| a.quiver[i][l] != b.quiver[c][perm[l]]) {
                    continue;
                }
                perm[i] = c;
                used[c] = true;
                if search(i + 1, a, b, keys, perm, used) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        let keys = ((0..n).map(|i| key(self, i)).collect(), (0..n).map(|i| key(other, i)).collect());
        search(0, self, other, &keys, &mut perm, &mut used)
    }
}
