//! The alternating 4-plat diagram of a rational tangle and its north-south
//! closure: crossing signs, components, writhe, and a Gordon-Litherland
//! signature computed from a Goeritz matrix.
//!
//! Every crossing stores its four ports counterclockwise starting at the
//! bottom-left: `0 = SW, 1 = SE, 2 = NE, 3 = NW`. Strands run `0 <-> 2` and
//! `1 <-> 3`; the `0-2` strand is always the over strand.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::tangles::{ContinuedFraction, Twist};

type Port = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Inner {
    Port(Port),
    End(usize),
}

const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

#[derive(Clone, Debug)]
pub struct ClosedDiagram {
    crossings: usize,
    conn: HashMap<Port, Port>,
    free_loops: usize,
}

struct Builder {
    ends: [Inner; 4],
    conn: HashMap<Port, Port>,
    free_loops: usize,
}

impl Builder {
    fn connect(&mut self, x: Port, y: Port) {
        self.conn.insert(x, y);
        self.conn.insert(y, x);
    }

    /// Plugs tangle endpoint `e` into `port`.
    fn attach(&mut self, e: usize, port: Port) {
        match self.ends[e] {
            Inner::Port(x) => self.connect(x, port),
            Inner::End(f) => self.ends[f] = Inner::Port(port),
        }
    }

    fn join(&mut self, e1: usize, e2: usize) {
        match (self.ends[e1], self.ends[e2]) {
            (Inner::End(f), _) if f == e2 => self.free_loops += 1,
            (Inner::Port(x), Inner::Port(y)) => self.connect(x, y),
            (Inner::Port(x), Inner::End(g)) => self.ends[g] = Inner::Port(x),
            (Inner::End(f), Inner::Port(y)) => self.ends[f] = Inner::Port(y),
            (Inner::End(f), Inner::End(g)) => {
                self.ends[f] = Inner::End(g);
                self.ends[g] = Inner::End(f);
            }
        }
    }
}

impl ClosedDiagram {
    pub fn ns_closure(cf: &ContinuedFraction) -> Self {
        let mut b = Builder {
            ends: [Inner::End(SW), Inner::End(SE), Inner::End(NW), Inner::End(NE)],
            conn: HashMap::new(),
            free_loops: 0,
        };
        let twists = cf.twists();
        for (c, t) in twists.iter().enumerate() {
            match t {
                Twist::T => {
                    b.attach(NW, (c, 0));
                    b.attach(NE, (c, 1));
                    b.ends[NW] = Inner::Port((c, 3));
                    b.ends[NE] = Inner::Port((c, 2));
                }
                Twist::R => {
                    b.attach(NE, (c, 3));
                    b.attach(SE, (c, 0));
                    b.ends[NE] = Inner::Port((c, 2));
                    b.ends[SE] = Inner::Port((c, 1));
                }
            }
        }
        b.join(NW, SW);
        b.join(NE, SE);
        ClosedDiagram { crossings: twists.len(), conn: b.conn, free_loops: b.free_loops }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    /// Oriented components as sequences of entry ports.
    fn components(&self) -> Vec<Vec<Port>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for c in 0..self.crossings {
            for s in [0, 1] {
                if seen.contains(&(c, s)) || seen.contains(&(c, s + 2)) {
                    continue;
                }
                let mut comp = Vec::new();
                let mut cur = (c, s);
                loop {
                    seen.insert(cur);
                    comp.push(cur);
                    let exit = (cur.0, (cur.1 + 2) % 4);
                    cur = self.conn[&exit];
                    if cur == (c, s) {
                        break;
                    }
                }
                out.push(comp);
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.free_loops
    }

    /// Entry port of each strand at each crossing, with component ids.
    fn orientation(&self) -> Vec<[(usize, usize); 2]> {
        let mut entries = vec![[(usize::MAX, 0); 2]; self.crossings];
        for (id, comp) in self.components().iter().enumerate() {
            for &(c, s) in comp {
                entries[c][s % 2] = (s, id);
            }
        }
        entries
    }

    /// Sign of each crossing in building order.
    pub fn crossing_signs(&self) -> Vec<i64> {
        const POS: [(i64, i64); 4] = [(-1, -1), (1, -1), (1, 1), (-1, 1)];
        self.orientation()
            .iter()
            .map(|e| {
                let dir = |s: usize| {
                    let (a, b) = (POS[s], POS[(s + 2) % 4]);
                    (b.0 - a.0, b.1 - a.1)
                };
                let o = dir(e[0].0);
                let u = dir(e[1].0);
                (o.0 * u.1 - o.1 * u.0).signum()
            })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_signs().iter().sum()
    }

    /// Writhe counting only crossings of a component with itself.
    pub fn self_writhe(&self) -> i64 {
        let o = self.orientation();
        self.crossing_signs().iter().zip(&o).filter(|(_, e)| e[0].1 == e[1].1).map(|(s, _)| s).sum()
    }

    pub fn is_alternating(&self) -> bool {
        self.components().iter().all(|comp| {
            let over: Vec<bool> = comp.iter().map(|&(_, s)| s % 2 == 0).collect();
            over.len() < 2 || (0..over.len()).all(|i| over[i] != over[(i + 1) % over.len()])
        })
    }

    /// Faces of the planar diagram, as a face id per crossing corner;
    /// corner `k` sits between ports `k` and `k + 1`.
    fn corner_faces(&self) -> Vec<[usize; 4]> {
        let mut face = vec![[usize::MAX; 4]; self.crossings];
        let mut next = 0;
        for c in 0..self.crossings {
            for k in 0..4 {
                if face[c][k] != usize::MAX {
                    continue;
                }
                let (mut cc, mut kk) = (c, k);
                while face[cc][kk] == usize::MAX {
                    face[cc][kk] = next;
                    // leave through port kk + 1, arrive at the far port, turn counterclockwise
                    let (nc, ns) = self.conn[&(cc, (kk + 1) % 4)];
                    cc = nc;
                    kk = ns;
                }
                next += 1;
            }
        }
        face
    }

    /// Knot signature via Gordon-Litherland, normalized so that positive
    /// knots have negative signature. `None` for links or crossingless diagrams.
    pub fn goeritz_signature(&self) -> Option<i64> {
        if self.component_count() != 1 {
            return None;
        }
        if self.crossings == 0 {
            return Some(0);
        }
        let faces = self.corner_faces();
        let nfaces = faces.iter().flatten().max().map_or(0, |m| m + 1);
        debug_assert_eq!(nfaces, self.crossings + 2);
        // chessboard colouring: corners k and k + 1 at a crossing differ
        let mut colour = vec![None; nfaces];
        colour[faces[0][0]] = Some(0usize);
        let mut changed = true;
        while changed {
            changed = false;
            for f in &faces {
                for k in 0..4 {
                    if let (Some(x), None) = (colour[f[k]], colour[f[(k + 1) % 4]]) {
                        colour[f[(k + 1) % 4]] = Some(1 - x);
                        changed = true;
                    }
                }
            }
        }
        let white: Vec<usize> = (0..nfaces).filter(|&f| colour[f] == Some(0)).collect();
        let index: HashMap<usize, usize> = white.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let n = white.len();
        let mut g = vec![vec![0i64; n]; n];
        let mut mu = 0;
        let orient = self.orientation();
        for (c, f) in faces.iter().enumerate() {
            let parity = if colour[f[0]] == Some(0) { 0 } else { 1 };
            // the over strand, turned counterclockwise, sweeps corners 0 and 2 first
            let eta = if parity == 0 { 1 } else { -1 };
            let (w1, w2) = (index[&f[parity]], index[&f[parity + 2]]);
            if w1 != w2 {
                g[w1][w2] -= eta;
                g[w2][w1] -= eta;
            }
            // the oriented smoothing merges the corner between the two incoming
            // ports; the crossing is of the second kind when that corner is shaded
            let ins = [orient[c][0].0, orient[c][1].0];
            let merged = if ins.contains(&0) && ins.contains(&3) { 3 } else { ins[0].min(ins[1]) };
            if merged % 2 != parity {
                mu += eta;
            }
        }
        for i in 0..n {
            let off: i64 = (0..n).filter(|&j| j != i).map(|j| g[i][j]).sum();
            g[i][i] = -off;
        }
        let reduced: Vec<Vec<i64>> = g.iter().skip(1).map(|row| row[1..].to_vec()).collect();
        Some(-(symmetric_signature(&reduced) - mu))
    }
}

/// Signature of a symmetric integer matrix by congruence diagonalization
/// over the rationals.
pub fn symmetric_signature(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut sig = 0;
    let mut alive: Vec<usize> = (0..n).collect();
    while let Some(&i) = alive.first() {
        if a[i][i].is_zero() {
            match alive.iter().copied().find(|&j| j != i && !a[i][j].is_zero()) {
                None => {
                    // zero row: contributes to the nullity only
                    alive.remove(0);
                    continue;
                }
                Some(j) => {
                    // replace e_i by e_i + e_j (or e_i - e_j) to get a nonzero pivot
                    let two = BigRational::from_integer(BigInt::from(2));
                    let plus = &a[j][j] + &two * &a[i][j];
                    let sign = if plus.is_zero() { -1i64 } else { 1 };
                    let s = BigRational::from_integer(BigInt::from(sign));
                    for k in 0..n {
                        let v = &a[i][k] + &s * &a[j][k];
                        a[i][k] = v;
                    }
                    for k in 0..n {
                        let v = &a[k][i] + &s * &a[k][j];
                        a[k][i] = v;
                    }
                }
            }
        }
        let p = a[i][i].clone();
        sig += if p.is_positive() { 1 } else { -1 };
        alive.remove(0);
        for &r in &alive {
            let f = &a[r][i] / &p;
            if f.is_zero() {
                continue;
            }
            for &k in &alive {
                let v = &a[r][k] - &f * &a[i][k];
                a[r][k] = v;
            }
            a[r][i] = BigRational::zero();
            a[i][r] = BigRational::zero();
        }
    }
    sig
}

/// Murasugi's closed form for the signature of the 2-bridge knot `p/q`
/// (`q` odd, `0 < q < p`), in the same sign normalization.
pub fn murasugi_signature(p: u64, q: u64) -> i64 {
    -(1..p).map(|i| if (i * q / p).is_multiple_of(2) { 1i64 } else { -1 }).sum::<i64>()
}
