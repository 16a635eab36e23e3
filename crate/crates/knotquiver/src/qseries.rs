//! Exact Laurent polynomials in `q` and `a`, q-rational functions with
//! `a`-free denominators, Pochhammer symbols, Gaussian binomials and
//! truncated series in a counting variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Integer-like coefficient ring. Exact division is needed for the
/// quotient checks, hence `Integer`.
pub trait Coeff:
    Clone + fmt::Debug + fmt::Display + Eq + Ord + Signed + Integer + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: Clone + fmt::Debug + fmt::Display + Eq + Ord + Signed + Integer + Send + Sync + 'static
{
}

/// Exponent pair. Field order gives the canonical `(exp_a, exp_q)` sort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub a: i64,
    pub q: i64,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, q: 0 };

    pub fn new(q: i64, a: i64) -> Self {
        Mono { a, q }
    }

    fn times(self, other: Mono) -> Mono {
        Mono { a: self.a + other.a, q: self.q + other.q }
    }

    fn over(self, other: Mono) -> Mono {
        Mono { a: self.a - other.a, q: self.q - other.q }
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0, 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^q * a^a`.
    pub fn monomial(c: C, q: i64, a: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono { a, q }, c);
        }
        LaurentPoly { terms }
    }

    pub fn q_pow(n: i64) -> Self {
        Self::monomial(C::one(), n, 0)
    }

    pub fn a_pow(n: i64) -> Self {
        Self::monomial(C::one(), 0, n)
    }

    /// `(-q)^s a^a q^extra`, the weight shape used everywhere in the pipeline.
    pub fn signed_monomial(s: i64, a: i64, extra_q: i64) -> Self {
        let c = if s.rem_euclid(2) == 0 { C::one() } else { -C::one() };
        Self::monomial(c, s + extra_q, a)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q: i64, a: i64) -> C {
        self.terms.get(&Mono { a, q }).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|m| m.a == 0)
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Multiply by `c q^q a^a`.
    pub fn mul_monomial(&self, c: &C, q: i64, a: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let shift = Mono { a, q };
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.times(shift), v.clone() * c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(c, 0, 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies an exponent map termwise, e.g. `q -> q^-1` or `a -> q^2`.
    pub fn map_exponents(&self, f: impl Fn(Mono) -> Mono) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    pub fn invert_q(&self) -> Self {
        self.map_exponents(|m| Mono { a: m.a, q: -m.q })
    }

    pub fn invert_a(&self) -> Self {
        self.map_exponents(|m| Mono { a: -m.a, q: m.q })
    }

    /// The Jones specialization `a = q^2`.
    pub fn a_to_q2(&self) -> Self {
        self.map_exponents(|m| Mono { a: 0, q: m.q + 2 * m.a })
    }

    fn leading(&self) -> Option<(Mono, &C)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    fn trailing(&self) -> Option<Mono> {
        self.terms.keys().next().copied()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent ring. Long division in lex order on `(a, q)`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dlead, dc) = d.leading()?;
        let dtrail = d.trailing()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Every quotient monomial is at least trailing(self)/trailing(d).
        let floor = self.trailing()?.over(dtrail);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rlead, rc)) = rem.leading() {
            let m = rlead.over(dlead);
            if m < floor {
                return None;
            }
            let (c, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &d.mul_monomial(&c, m.q, m.a);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Splits into slices by `a`-degree: `a^e -> q-only polynomial`.
    fn a_slices(&self) -> BTreeMap<i64, LaurentPoly<C>> {
        let mut out: BTreeMap<i64, LaurentPoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.a).or_insert_with(Self::zero).add_term(Mono { a: 0, q: m.q }, c.clone());
        }
        out
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(mut self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        &self * &rhs
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, var: char, e: i64, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let bare = *m == Mono::ONE;
            let mut first = true;
            if !abs.is_one() || bare {
                write!(f, "{abs}")?;
                first = false;
            }
            write_factor(f, 'q', m.q, &mut first)?;
            write_factor(f, 'a', m.a, &mut first)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Dense univariate helpers for gcd normalization of q-only polynomials.

fn to_dense<C: Coeff>(p: &LaurentPoly<C>) -> (i64, Vec<C>) {
    let lo = p.terms.keys().map(|m| m.q).min().unwrap_or(0);
    let hi = p.terms.keys().map(|m| m.q).max().unwrap_or(0);
    let mut v = vec![C::zero(); (hi - lo + 1) as usize];
    for (m, c) in &p.terms {
        v[(m.q - lo) as usize] = c.clone();
    }
    (lo, v)
}

fn from_dense<C: Coeff>(v: &[C]) -> LaurentPoly<C> {
    LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (Mono { a: 0, q: i as i64 }, c.clone())))
}

fn trim<C: Coeff>(v: &mut Vec<C>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content<C: Coeff>(v: &[C]) -> C {
    v.iter().fold(C::zero(), |g, c| g.gcd(c))
}

fn primitive<C: Coeff>(v: &[C]) -> Vec<C> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<C> = v.iter().map(|c| c.clone() / g.clone()).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

fn pseudo_rem<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    trim(&mut r);
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c = c.clone() * lb.clone();
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].clone() - lr.clone() * bc.clone();
        }
        trim(&mut r);
    }
    r
}

fn dense_gcd<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut x = primitive(a);
    let mut y = primitive(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
        trim(&mut y);
    }
    primitive(&x)
}

/// Polynomial gcd of two `q`-only Laurent polynomials, normalized to
/// trailing exponent 0 and positive leading coefficient.
pub fn q_gcd<C: Coeff>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (_, da) = to_dense(a);
    let (_, db) = to_dense(b);
    let g = dense_gcd(&da, &db);
    let cg = content(&da).gcd(&content(&db));
    from_dense(&g).scale(&cg)
}

/// Quotient of a `(q, a)` Laurent polynomial by a nonzero `q`-only one.
#[derive(Clone)]
pub struct QFraction<C> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Coeff> QFraction<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() || !den.is_q_only() {
            return Err(Error::BadDenominator);
        }
        Ok(QFraction { num, den })
    }

    pub fn from_poly(num: LaurentPoly<C>) -> Self {
        QFraction { num, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact Laurent polynomial value, if the denominator clears.
    pub fn to_poly(&self) -> Option<LaurentPoly<C>> {
        self.num.div_exact(&self.den)
    }

    /// Cancels the common factor of numerator and denominator and fixes
    /// the denominator's shape (constant term positive, no negative powers).
    pub fn normalized(&self) -> Self {
        let mut g = self.den.clone();
        for slice in self.num.a_slices().values() {
            if g.len() == 1 && g.terms().next().is_some_and(|(_, c)| c.abs().is_one()) {
                break;
            }
            g = q_gcd(&g, slice);
        }
        let mut num = self.num.div_exact(&g).expect("gcd divides numerator");
        let mut den = self.den.div_exact(&g).expect("gcd divides denominator");
        let (tm, tc) = den.terms().next().map(|(m, c)| (*m, c.clone())).expect("nonzero");
        let sign = if tc.is_negative() { -C::one() } else { C::one() };
        den = den.mul_monomial(&sign, -tm.q, 0);
        num = num.mul_monomial(&sign, -tm.q, 0);
        QFraction { num, den }
    }

    pub fn map_num(&self, f: impl Fn(&LaurentPoly<C>) -> LaurentPoly<C>) -> Self {
        QFraction { num: f(&self.num), den: self.den.clone() }
    }

    pub fn invert_q(&self) -> Self {
        QFraction { num: self.num.invert_q(), den: self.den.invert_q() }
    }

    pub fn a_to_q2(&self) -> Self {
        self.map_num(LaurentPoly::a_to_q2)
    }

    pub fn mul_poly(&self, p: &LaurentPoly<C>) -> Self {
        QFraction { num: &self.num * p, den: self.den.clone() }
    }

    /// Divides by a `q`-only polynomial.
    pub fn div_q_poly(&self, p: &LaurentPoly<C>) -> Result<Self> {
        if p.is_zero() || !p.is_q_only() {
            return Err(Error::BadDenominator);
        }
        Ok(QFraction { num: self.num.clone(), den: &self.den * p })
    }
}

impl<C: Coeff> PartialEq for QFraction<C> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Coeff> Eq for QFraction<C> {}

impl<C: Coeff> Add for &QFraction<C> {
    type Output = QFraction<C>;
    fn add(self, rhs: &QFraction<C>) -> QFraction<C> {
        if self.den == rhs.den {
            return QFraction { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        QFraction { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }
    }
}

impl<C: Coeff> Sub for &QFraction<C> {
    type Output = QFraction<C>;
    fn sub(self, rhs: &QFraction<C>) -> QFraction<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &QFraction<C> {
    type Output = QFraction<C>;
    fn neg(self) -> QFraction<C> {
        QFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Coeff> Mul for &QFraction<C> {
    type Output = QFraction<C>;
    fn mul(self, rhs: &QFraction<C>) -> QFraction<C> {
        QFraction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl<C: Coeff> fmt::Display for QFraction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        if n.den.is_one() {
            write!(f, "{}", n.num)
        } else {
            write!(f, "({}) / ({})", n.num, n.den)
        }
    }
}

impl<C: Coeff> fmt::Debug for QFraction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Power series in `x` truncated after `x^order`.
#[derive(Clone)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<QFraction<C>>,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// `coeffs[i]` is the coefficient of `x^i`; must be nonempty.
    pub fn new(coeffs: Vec<QFraction<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        TruncatedSeries { coeffs }
    }

    pub fn from_polys(coeffs: Vec<LaurentPoly<C>>) -> Self {
        Self::new(coeffs.into_iter().map(QFraction::from_poly).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![QFraction::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = QFraction::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &QFraction<C> {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[QFraction<C>] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new(
            (0..=n)
                .map(|i| {
                    (0..=i).fold(QFraction::zero(), |acc, k| &acc + &(&self.coeffs[k] * &other.coeffs[i - k]))
                })
                .collect(),
        )
    }

    pub fn map(&self, f: impl Fn(&QFraction<C>) -> QFraction<C>) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    pub fn a_to_q2(&self) -> Self {
        self.map(QFraction::a_to_q2)
    }

    /// Coefficientwise `q -> q^-1, a -> a^-1`: the mirror image.
    pub fn mirror(&self) -> Self {
        self.map(|c| c.invert_q().map_num(LaurentPoly::invert_a))
    }
}

impl<C: Coeff> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<C: Coeff> PartialEq for TruncatedSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        (0..=n).all(|i| self.coeffs[i] == other.coeffs[i])
    }
}

/// `prod_{i<n} (1 - c q^{q + step i} a^a)`.
pub fn pochhammer<C: Coeff>(c: &C, q: i64, a: i64, step: i64, n: usize) -> LaurentPoly<C> {
    let mut acc = LaurentPoly::one();
    for i in 0..n as i64 {
        let factor = &LaurentPoly::one() - &LaurentPoly::monomial(c.clone(), q + step * i, a);
        acc = &acc * &factor;
    }
    acc
}

/// `(q^2; q^2)_n`.
pub fn q2_pochhammer<C: Coeff>(n: usize) -> LaurentPoly<C> {
    pochhammer(&C::one(), 2, 0, 2, n)
}

/// Gaussian binomial in `q^2`, computed as a verified-exact Pochhammer quotient.
pub fn qbinom_plus<C: Coeff>(n: usize, k: i64) -> Result<LaurentPoly<C>> {
    if k < 0 || k as usize > n {
        return Ok(LaurentPoly::zero());
    }
    let k = k as usize;
    let den = &q2_pochhammer::<C>(k) * &q2_pochhammer::<C>(n - k);
    q2_pochhammer::<C>(n)
        .div_exact(&den)
        .ok_or_else(|| Error::InexactDivision(format!("[{n},{k}]_+")))
}

pub fn qmultinomial<C: Coeff>(n: usize, parts: &[usize]) -> Result<LaurentPoly<C>> {
    let got: usize = parts.iter().sum();
    if got != n {
        return Err(Error::MultinomialParts { expected: n, got });
    }
    let den = parts.iter().fold(LaurentPoly::one(), |acc, &p| &acc * &q2_pochhammer::<C>(p));
    q2_pochhammer::<C>(n)
        .div_exact(&den)
        .ok_or_else(|| Error::InexactDivision(format!("multinomial {n}; {parts:?}")))
}

/// `q^{-k(j-k)} [j,k]_+`.
pub fn balanced_from_plus<C: Coeff>(j: usize, k: usize) -> Result<LaurentPoly<C>> {
    let shift = -((k * (j - k)) as i64);
    Ok(qbinom_plus::<C>(j, k as i64)?.mul_monomial(&C::one(), shift, 0))
}

/// Pascal-table Gaussian binomials for hot loops; agrees with
/// [`qbinom_plus`] (checked in tests).
#[derive(Clone)]
pub struct BinomialTable<C> {
    rows: Vec<Vec<LaurentPoly<C>>>,
}

impl<C: Coeff> BinomialTable<C> {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<LaurentPoly<C>>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                if k == 0 || k == n {
                    row.push(LaurentPoly::one());
                } else {
                    // [n,k] = [n-1,k-1] + q^{2k} [n-1,k]
                    let prev: &Vec<LaurentPoly<C>> = &rows[n - 1];
                    let shifted = prev[k].mul_monomial(&C::one(), 2 * k as i64, 0);
                    row.push(&prev[k - 1] + &shifted);
                }
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> &LaurentPoly<C> {
        &self.rows[n][k]
    }

    /// Multinomial as a product of binomials over partial sums.
    pub fn multinomial(&self, parts: &[usize]) -> LaurentPoly<C> {
        let mut acc = LaurentPoly::one();
        let mut total = 0;
        for &p in parts {
            total += p;
            if p > 0 && p < total {
                acc = &acc * self.get(total, p);
            }
        }
        acc
    }
}
