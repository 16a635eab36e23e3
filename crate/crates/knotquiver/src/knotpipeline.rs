//! The knot algorithm: crossings are consumed in pairs so that the state keeps
//! a single extra Pochhammer `(q^2;q^2)_k` or `(q^2;q^2)_{j-k}`, and the last
//! top twist is merged with the closure. The result has `p` vertices and
//! encodes `sum_j P_j / (q^2;q^2)_j x^j`.

use serde::{Deserialize, Serialize};

use crate::diagram::ClosedDiagram;
use crate::error::{Error, Result};
use crate::quiverstate::{
    Lin, PochhammerSpec, Placement, Pipeline, Quad, QuiverData, QuiverState, RuleMono, SplitOrder,
};
use crate::tangles::{presentation, Boundary, ContinuedFraction, Slope, Twist};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairedOp {
    TT,
    RR,
    /// `T` then `R`.
    RT,
    /// `R` then `T`.
    TR,
}

impl PairedOp {
    /// Twists in application order.
    pub fn twists(self) -> [Twist; 2] {
        match self {
            PairedOp::TT => [Twist::T, Twist::T],
            PairedOp::RR => [Twist::R, Twist::R],
            PairedOp::RT => [Twist::T, Twist::R],
            PairedOp::TR => [Twist::R, Twist::T],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    Pair(PairedOp),
    /// A top twist on a state with `(q^2;q^2)_{j-k}`.
    TopComplement,
    /// A right twist on a state with `(q^2;q^2)_k`.
    RightComplement,
}

#[derive(Clone, Debug)]
pub struct Step {
    pub kind: StepKind,
    /// Number of twists of the tangle consumed so far.
    pub consumed: usize,
    pub state: QuiverState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PochType {
    Actives,
    Inactives,
}

fn poch_type(st: &QuiverState) -> Option<PochType> {
    let k = st.poch_indices();
    if k == st.actives() {
        Some(PochType::Actives)
    } else if k == st.inactives() {
        Some(PochType::Inactives)
    } else {
        None
    }
}

/// Sums the index pairs `(a_i, b_i)` into one index each, keeping the `b`
/// block in place. The pair sum produces `(q^2;q^2)_{D.r + c} / (q^2;q^2)_{D.r}`;
/// the denominator is cancelled against the extra Pochhammer.
pub fn pair_sum(st: &QuiverState, a: &[usize], b: &[usize]) -> Result<QuiverState> {
    let attempts = [(a, b, SplitOrder::Forward), (a, b, SplitOrder::Reverse), (b, a, SplitOrder::Forward), (b, a, SplitOrder::Reverse)];
    for (x, y, order) in attempts {
        if let Some(d) = pair_shift(st, x, y, order) {
            return finish_pair(st, x, y, &d);
        }
    }
    Err(Error::Hypothesis(format!("blocks {a:?} and {b:?} cannot be summed in pairs")))
}

/// The index set `D` if `(a, b)` has the shape of a pair summation.
fn pair_shift(st: &QuiverState, a: &[usize], b: &[usize], order: SplitOrder) -> Option<Vec<usize>> {
    let w = |x: usize, y: usize| st.m[x][y] + st.m[y][x];
    let n = st.len();
    let m = a.len();
    if m != b.len() || m == 0 {
        return None;
    }
    for i in 0..m {
        let (ra, rb) = (&st.indices[a[i]], &st.indices[b[i]]);
        if ra.s != rb.s + 1 || ra.a != rb.a || ra.active != rb.active || ra.extra_poch || rb.extra_poch {
            return None;
        }
        if st.m[a[i]][a[i]] != st.m[b[i]][b[i]] + 1 || w(a[i], b[i]) != 2 * st.m[b[i]][b[i]] {
            return None;
        }
        for l in 0..m {
            if l == i {
                continue;
            }
            let before = match order {
                SplitOrder::Forward => l < i,
                SplitOrder::Reverse => l > i,
            };
            let bump = if before { 2 } else { 0 };
            if w(a[i], b[l]) != w(b[i], b[l]) + bump {
                return None;
            }
            if before && w(a[i], a[l]) != w(b[i], b[l]) + 2 {
                return None;
            }
        }
    }
    let mut d = Vec::new();
    for r in 0..n {
        if a.contains(&r) || b.contains(&r) {
            continue;
        }
        let diff = w(a[0], r) - w(b[0], r);
        if (diff != 0 && diff != 2) || (1..m).any(|i| w(a[i], r) - w(b[i], r) != diff) {
            return None;
        }
        if diff == 2 {
            d.push(r);
        }
    }
    Some(d)
}

fn finish_pair(st: &QuiverState, a: &[usize], b: &[usize], d: &[usize]) -> Result<QuiverState> {
    let k_old = st.poch_indices();
    if d.iter().any(|x| !k_old.contains(x)) {
        return Err(Error::Hypothesis(format!("pair sum needs {d:?} inside the Pochhammer set {k_old:?}")));
    }
    let keep: Vec<usize> = (0..st.len()).filter(|x| !a.contains(x)).collect();
    let pos = |x: usize| keep.iter().position(|&y| y == x).unwrap();
    let mut out = st.rebuild(&keep);
    let d_new: Vec<usize> = d.iter().map(|&x| pos(x)).collect();
    let rest: Vec<usize> = k_old.iter().filter(|x| !d.contains(x)).map(|&x| pos(x)).collect();
    let spec = PochhammerSpec { sign: 1, q: 2, a: 0, lin: out.indicator(&d_new), targets: rest };
    let ab = out.absorb_pochhammer(&spec, SplitOrder::Forward, Placement::AfterTargets)?;
    out = ab.state;
    let mut k_new: Vec<usize> = d_new.iter().chain(b.iter().map(|&x| pos(x)).collect::<Vec<_>>().iter()).map(|&x| ab.beta[x]).collect();
    k_new.sort_unstable();
    out.set_poch(&k_new);
    Ok(out)
}

/// Shrinks the extra Pochhammer to `(q^2;q^2)_{target.d}` by absorbing the
/// quotient `(q^{2 + 2 target.d}; q^2)_{rest}`.
pub fn reduce_to_target(st: &QuiverState, target: &[usize]) -> Result<QuiverState> {
    let k = st.poch_indices();
    if target.iter().any(|t| !k.contains(t)) {
        return Err(Error::Hypothesis(format!("target {target:?} is not inside the Pochhammer set {k:?}")));
    }
    let rest: Vec<usize> = k.iter().filter(|x| !target.contains(x)).copied().collect();
    let spec = PochhammerSpec { sign: 1, q: 2, a: 0, lin: st.indicator(target), targets: rest };
    let ab = st.absorb_pochhammer(&spec, SplitOrder::Forward, Placement::AfterTargets)?;
    let mut out = ab.state;
    let t: Vec<usize> = target.iter().map(|&x| ab.beta[x]).collect();
    out.set_poch(&t);
    Ok(out)
}

/// Plain twist that also tracks where the split parts land.
fn twist_tracked(st: &QuiverState, kind: Twist) -> (QuiverState, Vec<usize>, Vec<usize>) {
    let p = st.actives();
    let n = st.inactives();
    let out = st.apply_twist(kind);
    let (np, nn) = (p.len(), n.len());
    // T: [P, C, B]; R: [Pb, Pc, N]
    let (first, second) = match kind {
        Twist::T => ((np..np + nn).collect(), (np + nn..np + 2 * nn).collect()),
        Twist::R => ((0..np).collect(), (np..2 * np).collect()),
    };
    (out, first, second)
}

fn require(st: &QuiverState, objs: &[Boundary], k: PochType, what: &str) -> Result<()> {
    if !objs.contains(&st.obj) || poch_type(st) != Some(k) {
        return Err(Error::Hypothesis(format!("{what} does not apply to {} with {:?}", st.obj, poch_type(st))));
    }
    Ok(())
}

pub fn apply_pair(st: &QuiverState, op: PairedOp) -> Result<QuiverState> {
    match op {
        PairedOp::TT => {
            require(st, &[Boundary::Up, Boundary::Op], PochType::Actives, "TT")?;
            let (s1, c1, _) = twist_tracked(st, Twist::T);
            let (s2, c2, _) = twist_tracked(&s1, Twist::T);
            // second T keeps [P, C1] first, so C1 keeps its positions
            let summed = pair_sum(&s2, &c1, &c2)?;
            reduce_to_target(&summed, &summed.actives())
        }
        PairedOp::RR => {
            require(st, &[Boundary::Op, Boundary::Ri], PochType::Inactives, "RR")?;
            let (s1, _, p2) = twist_tracked(st, Twist::R);
            let (s2, _, p1c) = twist_tracked(&s1, Twist::R);
            // second R lays out [P1', P1'', P2, N]; old P2 sits right after P1''
            let shift = p1c.len();
            let p2: Vec<usize> = p2.iter().map(|x| x + shift).collect();
            let summed = pair_sum(&s2, &p1c, &p2)?;
            reduce_to_target(&summed, &summed.inactives())
        }
        PairedOp::RT => {
            require(st, &[Boundary::Up, Boundary::Op], PochType::Actives, "RT")?;
            let (s1, _, _) = twist_tracked(st, Twist::T);
            let np = st.actives().len();
            let (s2, _, pc) = twist_tracked(&s1, Twist::R);
            // [P', C', P'', C'', B]: pair C'' with B
            let c2: Vec<usize> = pc[np..].to_vec();
            let b: Vec<usize> = (pc.last().map_or(0, |x| x + 1)..s2.len()).collect();
            let summed = pair_sum(&s2, &c2, &b)?;
            reduce_to_target(&summed, &summed.inactives())
        }
        PairedOp::TR => {
            require(st, &[Boundary::Op, Boundary::Ri], PochType::Inactives, "TR")?;
            let (s1, p1, _) = twist_tracked(st, Twist::R);
            let np2 = st.actives().len();
            let (s2, c, _) = twist_tracked(&s1, Twist::T);
            // [P1, P2c, Nc, P2b, Nb]: pair P1 with P2c
            let p2c: Vec<usize> = c[..np2].to_vec();
            let summed = pair_sum(&s2, &p1, &p2c)?;
            reduce_to_target(&summed, &summed.actives())
        }
    }
}

/// A single twist on a state whose Pochhammer has the complementary type.
fn complement_step(st: &QuiverState, kind: Twist) -> Result<QuiverState> {
    let out = st.apply_twist(kind);
    match kind {
        Twist::T => reduce_to_target(&out, &out.inactives()),
        Twist::R => reduce_to_target(&out, &out.actives()),
    }
}

/// Runs the pairing algorithm over all twists but the last top twist.
pub fn reduce_cf_steps(cf: &ContinuedFraction) -> Result<Vec<Step>> {
    let mut rem: Vec<u64> = cf.terms().to_vec();
    *rem.last_mut().expect("continued fractions are non-empty") -= 1;
    let mut st = QuiverState::trivial();
    let mut consumed = 0usize;
    let mut steps = Vec::new();
    let mut i = 0;
    while i < rem.len() {
        if rem[i] == 0 {
            i += 1;
            continue;
        }
        let kind = if i % 2 == 0 { Twist::T } else { Twist::R };
        let pt = poch_type(&st).ok_or_else(|| Error::Hypothesis("extra Pochhammer of mixed type".into()))?;
        let step = match (kind, pt) {
            (Twist::T, PochType::Actives) | (Twist::R, PochType::Inactives) => {
                let (double, mixed) = match kind {
                    Twist::T => (PairedOp::TT, PairedOp::RT),
                    Twist::R => (PairedOp::RR, PairedOp::TR),
                };
                if rem[i] >= 2 {
                    rem[i] -= 2;
                    double
                } else {
                    if i + 1 >= rem.len() || rem[i + 1] == 0 {
                        return Err(Error::Hypothesis(format!("a lone {kind:?} twist cannot be paired")));
                    }
                    rem[i] -= 1;
                    rem[i + 1] -= 1;
                    mixed
                }
            }
            _ => {
                rem[i] -= 1;
                st = complement_step(&st, kind)?;
                consumed += 1;
                steps.push(Step {
                    kind: if kind == Twist::T { StepKind::TopComplement } else { StepKind::RightComplement },
                    consumed,
                    state: st.clone(),
                });
                continue;
            }
        };
        st = apply_pair(&st, step)?;
        consumed += 2;
        steps.push(Step { kind: StepKind::Pair(step), consumed, state: st.clone() });
    }
    Ok(steps)
}

/// The state for the tangle with its last top twist removed.
pub fn reduce_cf(cf: &ContinuedFraction) -> Result<QuiverState> {
    Ok(reduce_cf_steps(cf)?.pop().map_or_else(QuiverState::trivial, |s| s.state))
}

/// Last top twist plus closure, producing a polynomial quiver form.
pub fn final_close(st: &QuiverState) -> Result<QuiverState> {
    let n = st.len();
    let uj = vec![1i64; n];
    let act = st.actives();
    let inact = st.inactives();
    let uk = st.indicator(&act);
    let mut out = st.clone();
    let (mono, spec) = match (st.obj, poch_type(st)) {
        (Boundary::Up, Some(PochType::Actives)) => (
            // (-q)^{k-j} a^{-j} q^{2k^2+j^2} (a^2 q^{2-2j-2k};q^2)_k
            RuleMono {
                sign: Lin { j: -1, k: 1, h: 0 },
                a: Lin { j: -1, ..Default::default() },
                quad: Quad { kk: 2, jj: 1, ..Default::default() },
            },
            PochhammerSpec { sign: 1, q: 2, a: 2, lin: (0..n).map(|i| -uj[i] - uk[i]).collect(), targets: act },
        ),
        (Boundary::Ri, Some(PochType::Inactives)) => (
            // (-q)^k a^{2k-j} q^{-4kj+2k^2+j^2} (a^2 q^{2-4j+2k};q^2)_{j-k}
            RuleMono {
                sign: Lin { k: 1, ..Default::default() },
                a: Lin { j: -1, k: 2, h: 0 },
                quad: Quad { jk: -4, kk: 2, jj: 1, ..Default::default() },
            },
            PochhammerSpec { sign: 1, q: 2, a: 2, lin: (0..n).map(|i| -2 * uj[i] + uk[i]).collect(), targets: inact },
        ),
        (obj, pt) => {
            return Err(Error::Hypothesis(format!("final closure needs UP with (q^2;q^2)_k or RI with (q^2;q^2)_(j-k), got {obj} with {pt:?}")))
        }
    };
    out.apply_mono(&mono, &uj, &uk, &uk);
    out.set_poch(&[]);
    Ok(out.absorb_pochhammer(&spec, SplitOrder::Reverse, Placement::End)?.state)
}

/// Knot-route quiver data of a knot slope, in the antisymmetric convention
/// and the blackboard framing of the diagram actually used.
pub fn knot_quiver(s: Slope) -> Result<QuiverData> {
    if !s.is_knot() {
        return Err(Error::NotAKnot { p: s.p, q: s.q });
    }
    let pr = presentation(s)?;
    let closed = final_close(&reduce_cf(&pr.cf)?)?;
    let writhe = ClosedDiagram::ns_closure(&pr.cf).self_writhe();
    let qd = QuiverData::from_state(&closed, pr.used, Pipeline::Knot, writhe)?;
    let mut qd = if pr.mirrored { qd.mirror() } else { qd };
    qd.origin = s;
    Ok(qd)
}

/// Link-route quiver data (any rational slope), antisymmetric convention.
pub fn link_quiver(s: Slope) -> Result<QuiverData> {
    let pr = presentation(s)?;
    let st = pr.cf.twists().into_iter().fold(QuiverState::trivial(), |st, t| st.apply_twist(t));
    let writhe = ClosedDiagram::ns_closure(&pr.cf).self_writhe();
    let qd = QuiverData::from_state(&st.close_link()?, pr.used, Pipeline::Link, writhe)?;
    let mut qd = if pr.mirrored { qd.mirror() } else { qd };
    qd.origin = s;
    Ok(qd)
}

/// `delta_i = q_i - Q_ii - 2 a_i` in the antisymmetric convention.
pub fn delta_vector(qd: &QuiverData) -> Vec<i64> {
    (0..qd.vertices()).map(|i| qd.q_vec[i] - qd.quiver[i][i] - 2 * qd.a_vec[i]).collect()
}

/// Common value of the delta grading, if it is constant.
pub fn delta_grading(qd: &QuiverData) -> Option<i64> {
    let d = delta_vector(qd);
    let first = *d.first()?;
    d.iter().all(|&x| x == first).then_some(first)
}

/// Signature from the building sequence: one plus the number of right
/// twists, minus the twists of types `T` on UP, `R` on UP and `R` on OP.
/// Positive knots get negative signature.
pub fn signature(s: Slope) -> Result<i64> {
    if !s.is_knot() {
        return Err(Error::NotAKnot { p: s.p, q: s.q });
    }
    let pr = presentation(s)?;
    let mut obj = Boundary::Up;
    let mut sigma = 1i64;
    for t in pr.cf.twists() {
        if t == Twist::R {
            sigma += 1;
        }
        if matches!((obj, t), (Boundary::Up, _) | (Boundary::Op, Twist::R)) {
            sigma -= 1;
        }
        obj = obj.after(t);
    }
    Ok(if pr.mirrored { -sigma } else { sigma })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGenerator {
    pub a_deg: i64,
    pub q_deg: i64,
    pub t_deg: i64,
}

/// One generator `(a_i, -Q_ii - q_i, -Q_ii)` per vertex.
pub fn homology_generators(qd: &QuiverData) -> Vec<HomologyGenerator> {
    (0..qd.vertices())
        .map(|i| HomologyGenerator {
            a_deg: qd.a_vec[i],
            q_deg: -qd.quiver[i][i] - qd.q_vec[i],
            t_deg: -qd.quiver[i][i],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverstate::Convention;
    use crate::skein::SkeinElement;
    use crate::tangles::{cf_expand, enumerate_rational_knots, slopes_up_to};

    fn slope(p: u64, q: u64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    /// `(S, A)` rows for actives then inactives, the `Q` block in that order,
    /// and whether the extra Pochhammer sits on the actives.
    type Display = (Vec<[i64; 2]>, Vec<[i64; 2]>, Vec<Vec<i64>>, bool);

    fn display(st: &QuiverState) -> Display {
        let order: Vec<usize> = st.actives().into_iter().chain(st.inactives()).collect();
        let q = st.symmetrized().unwrap();
        let rows = |ix: Vec<usize>| ix.into_iter().map(|i| [st.indices[i].s, st.indices[i].a]).collect();
        let m = order.iter().map(|&i| order.iter().map(|&l| q[i][l]).collect()).collect();
        (rows(st.actives()), rows(st.inactives()), m, st.poch_indices() == st.actives())
    }

    #[test]
    fn trefoil_pair_step() {
        let steps = reduce_cf_steps(&cf_expand(slope(3, 1)).unwrap()).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].kind, StepKind::Pair(PairedOp::TT));
        let st = &steps[0].state;
        assert_eq!(st.obj, Boundary::Up);
        assert_eq!(display(st), (vec![[-1, 0]], vec![[-2, 0]], vec![vec![0, 0], vec![0, 0]], true));
    }

    #[test]
    fn trefoil_closure_and_final_frame() {
        let closed = final_close(&reduce_cf(&cf_expand(slope(3, 1)).unwrap()).unwrap()).unwrap();
        let s: Vec<i64> = closed.indices.iter().map(|r| r.s).collect();
        let a: Vec<i64> = closed.indices.iter().map(|r| r.a).collect();
        assert_eq!(s, [-1, -3, 0]);
        assert_eq!(a, [-1, -1, 1]);
        assert_eq!(closed.symmetrized().unwrap(), [[3, 1, 1], [1, 1, 0], [1, 0, 0]]);

        let qd = knot_quiver(slope(3, 1)).unwrap();
        let adjusted = qd.framing_shift(-3);
        assert_eq!(adjusted.q_vec, [2, 0, 3]);
        assert_eq!(adjusted.a_vec, [2, 2, 4]);
        assert_eq!(adjusted.quiver, [[0, -2, -2], [-2, -2, -3], [-2, -3, -3]]);
        let fin = qd.q_invert().unwrap().to_canonical_frame();
        assert_eq!(fin.convention, Convention::Symmetric);
        assert_eq!(fin.quiver, [[0, 1, 1], [1, 2, 2], [1, 2, 3]]);
        assert_eq!(fin.q_vec, [-2, 0, -3]);
        assert_eq!(fin.a_vec, [2, 2, 4]);
    }

    #[test]
    fn seven_three_intermediate_states() {
        let steps = reduce_cf_steps(&cf_expand(slope(13, 3)).unwrap()).unwrap();
        let kinds: Vec<StepKind> = steps.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, [StepKind::Pair(PairedOp::RT), StepKind::Pair(PairedOp::TR), StepKind::Pair(PairedOp::TT)]);

        let rt = &steps[0].state;
        assert_eq!(rt.obj, Boundary::Op);
        assert_eq!(display(rt), (vec![[0, 0]], vec![[-2, -1]], vec![vec![0, 1], vec![1, 1]], false));

        let tr = &steps[1].state;
        assert_eq!(tr.obj, Boundary::Up);
        let (act, inact, m, on_actives) = display(tr);
        assert_eq!(act, [[-1, 0], [-3, -2]]);
        assert_eq!(inact, [[-2, 0], [-4, -2], [-3, -2]]);
        assert!(on_actives);
        assert_eq!(
            m,
            [[0, 1, 0, 1, 2], [1, 2, 2, 2, 3], [0, 2, 0, 1, 1], [1, 2, 1, 2, 2], [2, 3, 1, 2, 3]]
        );

        let tt = &steps[2].state;
        assert_eq!(tt.obj, Boundary::Up);
        let (act, inact, m, on_actives) = display(tt);
        assert_eq!(act, [[-1, 0], [-3, -2], [-3, 0], [-5, -2], [-4, -2]]);
        assert_eq!(inact, [[-4, 0], [-6, -2], [-5, -2]]);
        assert!(on_actives);
        assert_eq!(
            m,
            [
                [2, 3, 0, 1, 2, 0, 1, 2],
                [3, 4, 2, 2, 3, 2, 2, 3],
                [0, 2, 0, 1, 1, 0, 1, 1],
                [1, 2, 1, 2, 2, 2, 2, 2],
                [2, 3, 1, 2, 3, 2, 3, 3],
                [0, 2, 0, 2, 2, 0, 1, 1],
                [1, 2, 1, 2, 3, 1, 2, 2],
                [2, 3, 1, 2, 3, 1, 2, 3],
            ]
        );
    }

    const SEVEN_THREE_PRE: [[i64; 13]; 13] = [
        [5, 6, 3, 4, 5, 1, 2, 3, 3, 4, 1, 2, 3],
        [6, 7, 5, 5, 6, 3, 3, 4, 5, 5, 3, 3, 4],
        [3, 5, 3, 4, 4, 1, 2, 2, 2, 4, 1, 2, 2],
        [4, 5, 4, 5, 5, 3, 3, 3, 3, 4, 3, 3, 3],
        [5, 6, 4, 5, 6, 3, 4, 4, 4, 5, 3, 4, 4],
        [1, 3, 1, 3, 3, 1, 2, 2, 0, 2, 0, 2, 2],
        [2, 3, 2, 3, 4, 2, 3, 3, 1, 2, 1, 2, 3],
        [3, 4, 2, 3, 4, 2, 3, 4, 2, 3, 1, 2, 3],
        [3, 5, 2, 3, 4, 0, 1, 2, 2, 3, 0, 1, 2],
        [4, 5, 4, 4, 5, 2, 2, 3, 3, 4, 2, 2, 3],
        [1, 3, 1, 3, 3, 0, 1, 1, 0, 2, 0, 1, 1],
        [2, 3, 2, 3, 4, 2, 2, 2, 1, 2, 1, 2, 2],
        [3, 4, 2, 3, 4, 2, 3, 3, 2, 3, 1, 2, 3],
    ];

    const SEVEN_THREE_FINAL: [[i64; 13]; 13] = [
        [2, 0, 3, 2, 1, 5, 4, 3, 3, 2, 5, 4, 3],
        [0, 0, 1, 1, 0, 3, 3, 2, 1, 1, 3, 3, 2],
        [3, 1, 4, 2, 2, 5, 4, 4, 4, 2, 5, 4, 4],
        [2, 1, 2, 2, 1, 3, 3, 3, 3, 2, 3, 3, 3],
        [1, 0, 2, 1, 1, 3, 2, 2, 2, 1, 3, 2, 2],
        [5, 3, 5, 3, 3, 6, 4, 4, 6, 4, 6, 4, 4],
        [4, 3, 4, 3, 2, 4, 4, 3, 5, 4, 5, 4, 3],
        [3, 2, 4, 3, 2, 4, 3, 3, 4, 3, 5, 4, 3],
        [3, 1, 4, 3, 2, 6, 5, 4, 5, 3, 6, 5, 4],
        [2, 1, 2, 2, 1, 4, 4, 3, 3, 3, 4, 4, 3],
        [5, 3, 5, 3, 3, 6, 5, 5, 6, 4, 7, 5, 5],
        [4, 3, 4, 3, 2, 4, 4, 4, 5, 4, 5, 5, 4],
        [3, 2, 4, 3, 2, 4, 3, 3, 4, 3, 5, 4, 4],
    ];

    #[test]
    fn seven_three_closure() {
        let closed = final_close(&reduce_cf(&cf_expand(slope(13, 3)).unwrap()).unwrap()).unwrap();
        let s: Vec<i64> = closed.indices.iter().map(|r| r.s).collect();
        let a: Vec<i64> = closed.indices.iter().map(|r| r.a).collect();
        assert_eq!(s, [-1, -3, -3, -5, -4, -5, -7, -6, 0, -2, -2, -4, -3]);
        assert_eq!(a, [-1, -3, -1, -3, -3, -1, -3, -3, 1, -1, 1, -1, -1]);
        assert_eq!(closed.symmetrized().unwrap(), SEVEN_THREE_PRE.map(|r| r.to_vec()).to_vec());

        let fin = knot_quiver(slope(13, 3)).unwrap().q_invert().unwrap().to_canonical_frame();
        let qa: Vec<(i64, i64)> = fin.q_vec.iter().copied().zip(fin.a_vec.iter().copied()).collect();
        assert_eq!(
            qa,
            [(-6, 6), (-4, 4), (-4, 6), (-2, 4), (-3, 4), (-2, 6), (0, 4), (-1, 4), (-7, 8), (-5, 6), (-5, 8), (-3, 6), (-4, 6)]
        );
        assert_eq!(fin.quiver, SEVEN_THREE_FINAL.map(|r| r.to_vec()).to_vec());
    }

    #[test]
    fn every_step_matches_the_tangle() {
        for s in slopes_up_to(6, true) {
            let Ok(pr) = presentation(s) else { continue };
            if !pr.used.is_knot() {
                continue;
            }
            let twists = pr.cf.twists();
            for step in reduce_cf_steps(&pr.cf).unwrap() {
                let got = step.state.expand(3);
                for (j, el) in got.into_iter().enumerate() {
                    let want = twists[..step.consumed].iter().fold(SkeinElement::trivial(j), |e, &t| e.twist(t)).rescale();
                    assert_eq!(el, want, "{s} after {:?}, color {j}", step.kind);
                }
            }
        }
    }

    #[test]
    fn knot_route_matches_invariants() {
        for s in enumerate_rational_knots(7) {
            let qd = knot_quiver(s).unwrap();
            assert_eq!(qd.vertices() as u64, s.p, "{s}");
            let report = crate::verify::verify_data(&qd, 0..=3).unwrap();
            assert!(report.passed, "{s}: {:?}", report.first_mismatch);
        }
    }

    #[test]
    fn delta_is_the_signature() {
        for s in enumerate_rational_knots(10) {
            let qd = knot_quiver(s).unwrap();
            let sigma = signature(s).unwrap();
            assert_eq!(delta_grading(&qd), Some(sigma), "{s}");
            let cf = presentation(s).unwrap().cf;
            let goeritz = crate::diagram::ClosedDiagram::ns_closure(&cf).goeritz_signature().unwrap();
            let mirrored = presentation(s).unwrap().mirrored;
            assert_eq!(if mirrored { -goeritz } else { goeritz }, sigma, "{s}");
            for g in homology_generators(&qd) {
                assert_eq!(2 * g.t_deg - 2 * g.a_deg - g.q_deg, sigma);
            }
        }
    }

    #[test]
    fn trefoil_homology() {
        let gens = homology_generators(&knot_quiver(slope(3, 1)).unwrap());
        let triples: Vec<(i64, i64, i64)> = gens.iter().map(|g| (g.a_deg, g.q_deg, g.t_deg)).collect();
        assert_eq!(triples, [(-1, -2, -3), (-1, 2, -1), (1, 0, 0)]);
    }
}
