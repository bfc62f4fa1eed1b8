//! Knot windows and exact arithmetic on the golden-mean lattice `ℤ[τ]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The golden mean `(1 + √5) / 2`.
pub const TAU: f64 = 1.618_033_988_749_895;

/// Exact element `p + q·τ` of `ℤ[τ]`, using `τ² = 1 + τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauNumber {
    pub p: i64,
    pub q: i64,
}

impl TauNumber {
    pub const ZERO: TauNumber = TauNumber { p: 0, q: 0 };
    pub const ONE: TauNumber = TauNumber { p: 1, q: 0 };
    pub const TAU: TauNumber = TauNumber { p: 0, q: 1 };
    /// `1/τ = τ - 1`.
    pub const TAU_INV: TauNumber = TauNumber { p: -1, q: 1 };

    pub const fn new(p: i64, q: i64) -> Self {
        TauNumber { p, q }
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 + self.q as f64 * TAU
    }

    /// `τ^k` for any integer `k`, exact.
    pub fn tau_pow(k: i32) -> TauNumber {
        let base = if k >= 0 { TauNumber::TAU } else { TauNumber::TAU_INV };
        (0..k.unsigned_abs()).fold(TauNumber::ONE, |acc, _| acc * base)
    }

    /// Sign of `p + qτ`, decided without rounding.
    pub fn signum(self) -> i32 {
        // p + qτ has the sign of (2p + q) + q√5.
        let a = 2 * self.p as i128 + self.q as i128;
        let b = self.q as i128;
        let cmp = |x: i128, y: i128| match x.cmp(&y) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        match (a.signum(), b.signum()) {
            (0, 0) => 0,
            (sa, sb) if sa >= 0 && sb >= 0 => 1,
            (sa, sb) if sa <= 0 && sb <= 0 => -1,
            // mixed signs: compare a² with 5b²
            (1, _) => cmp(a * a, 5 * b * b),
            _ => cmp(5 * b * b, a * a),
        }
    }

    pub fn is_zero(self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// Greedy expansion `Σ ε_k τ^k` with `k ≥ 0`, lowest power first.
    /// `None` if the number is negative or needs negative powers, i.e. is
    /// not a non-negative τ-integer.
    pub fn tau_digits(self) -> Option<Vec<u8>> {
        match self.signum() {
            -1 => return None,
            0 => return Some(Vec::new()),
            _ => {}
        }
        let mut powers = vec![TauNumber::ONE];
        while *powers.last().unwrap() * TauNumber::TAU <= self {
            let next = *powers.last().unwrap() * TauNumber::TAU;
            powers.push(next);
        }
        let mut digits = vec![0u8; powers.len()];
        let mut rem = self;
        for k in (0..powers.len()).rev() {
            if powers[k] <= rem {
                digits[k] = 1;
                rem = rem - powers[k];
            }
        }
        rem.is_zero().then_some(digits)
    }

    pub fn is_tau_integer(self) -> bool {
        self.tau_digits().is_some()
    }
}

impl Ord for TauNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl PartialOrd for TauNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for TauNumber {
    type Output = TauNumber;
    fn add(self, o: TauNumber) -> TauNumber {
        TauNumber::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for TauNumber {
    type Output = TauNumber;
    fn sub(self, o: TauNumber) -> TauNumber {
        TauNumber::new(self.p - o.p, self.q - o.q)
    }
}

impl Neg for TauNumber {
    type Output = TauNumber;
    fn neg(self) -> TauNumber {
        TauNumber::new(-self.p, -self.q)
    }
}

impl Mul for TauNumber {
    type Output = TauNumber;
    fn mul(self, o: TauNumber) -> TauNumber {
        let (p, q, r, s) = (self.p, self.q, o.p, o.q);
        TauNumber::new(p * r + q * s, p * s + q * r + q * s)
    }
}

impl fmt::Display for TauNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p, self.q) {
            (p, 0) => write!(f, "{p}"),
            (0, 1) => write!(f, "tau"),
            (0, q) => write!(f, "{q}tau"),
            (p, 1) => write!(f, "{p}+tau"),
            (p, q) if q < 0 => write!(f, "{p}{q}tau"),
            (p, q) => write!(f, "{p}+{q}tau"),
        }
    }
}

/// First `n` letters of the gap word of `ℤ_τ⁺`, generated by iterating the
/// substitution `L → LS`, `S → L` from `L`.
pub fn fibonacci_word(n: usize) -> String {
    let mut word = String::from("L");
    while word.len() < n {
        word = word
            .chars()
            .map(|c| if c == 'L' { "LS" } else { "L" })
            .collect();
    }
    word.truncate(n);
    word
}

/// The first `count` non-negative τ-integers in increasing order.
pub fn tau_integers(count: usize) -> Vec<TauNumber> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut x = TauNumber::ZERO;
    out.push(x);
    for c in fibonacci_word(count - 1).chars() {
        x = x + if c == 'L' { TauNumber::ONE } else { TauNumber::TAU_INV };
        out.push(x);
    }
    out
}

/// All non-negative τ-integers `≤ bound`.
pub fn tau_integers_upto(bound: TauNumber) -> Vec<TauNumber> {
    let mut n = 8;
    loop {
        let xs = tau_integers(n);
        if *xs.last().unwrap() > bound {
            return xs.into_iter().filter(|x| *x <= bound).collect();
        }
        n *= 2;
    }
}

/// Gap pattern `(a - a₋, a₊ - a)` of a positive τ-integer: LS = (1, 1/τ),
/// SL = (1/τ, 1), LL = (1, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GapClass {
    LS,
    SL,
    LL,
}

impl GapClass {
    /// The class representative `β ∈ {1, τ, τ²}`.
    pub fn representative(self) -> TauNumber {
        match self {
            GapClass::LS => TauNumber::ONE,
            GapClass::SL => TauNumber::TAU,
            GapClass::LL => TauNumber::tau_pow(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GapClass::LS => "LS",
            GapClass::SL => "SL",
            GapClass::LL => "LL",
        }
    }
}

/// Class of a positive τ-integer via membership in `1 + τ²ℤ_τ⁺`,
/// `τ + τ²ℤ_τ⁺` or `τ² + τ³ℤ_τ⁺`.
pub fn classify(a: TauNumber) -> Result<GapClass> {
    Ok(beta_mu_class(a)?.0)
}

/// Decomposition `a = β(a) + μ(a)` with `β ∈ {1, τ, τ²}`.
pub fn beta_mu(a: TauNumber) -> Result<(TauNumber, TauNumber)> {
    let (_, beta, mu) = beta_mu_class(a)?;
    Ok((beta, mu))
}

fn beta_mu_class(a: TauNumber) -> Result<(GapClass, TauNumber, TauNumber)> {
    if a.signum() <= 0 || !a.is_tau_integer() {
        return Err(Error::Domain(format!("{a} is not a positive tau-integer")));
    }
    let t2inv = TauNumber::tau_pow(-2);
    let t3inv = TauNumber::tau_pow(-3);
    for (class, scale) in [(GapClass::LS, t2inv), (GapClass::SL, t2inv), (GapClass::LL, t3inv)] {
        let beta = class.representative();
        let mu = a - beta;
        if (mu * scale).is_tau_integer() {
            return Ok((class, beta, mu));
        }
    }
    Err(Error::Consistency(format!("{a} matched no gap class")))
}

/// Level-`k` version of [`beta_mu`] on `τ^{-k}ℤ_τ⁺`, obtained by scaling
/// to level 0 and back.
pub fn beta_mu_level(a: TauNumber, k: i32) -> Result<(GapClass, TauNumber, TauNumber)> {
    let up = TauNumber::tau_pow(k);
    let down = TauNumber::tau_pow(-k);
    let (class, beta, mu) = beta_mu_class(a * up)?;
    Ok((class, beta * down, mu * down))
}

/// Whether the first/last knot of a window is a true endpoint of the domain
/// or just where the window was cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Endpoint,
    Cut,
}

/// Neighbor of a knot inside a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Neighbor {
    Knot(f64),
    /// `a₋ = -∞` at `inf J`, `a₊ = +∞` at `sup J`.
    Infinite,
    /// The window was cut here; the true neighbor is unknown.
    Cut,
}

impl Neighbor {
    pub fn knot(self) -> Option<f64> {
        match self {
            Neighbor::Knot(x) => Some(x),
            _ => None,
        }
    }
}

/// Finite strictly increasing knot list with endpoint roles.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotWindow {
    knots: Vec<f64>,
    exact: Option<Vec<TauNumber>>,
    /// Lattice level `k` when the knots lie in `τ^{-k}ℤ_τ⁺`.
    level: Option<i32>,
    pub left_role: Role,
    pub right_role: Role,
}

impl KnotWindow {
    pub fn new(knots: Vec<f64>, left_role: Role, right_role: Role) -> Result<Self> {
        if knots.len() < 3 {
            return Err(Error::Domain(format!("a knot window needs at least 3 knots, got {}", knots.len())));
        }
        if knots.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("knots must be finite".into()));
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("knots must be strictly increasing".into()));
        }
        Ok(KnotWindow { knots, exact: None, level: None, left_role, right_role })
    }

    /// Window with exact τ-lattice knots.
    pub fn from_tau(exact: Vec<TauNumber>, left_role: Role, right_role: Role) -> Result<Self> {
        if exact.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("knots must be strictly increasing".into()));
        }
        let mut w = KnotWindow::new(exact.iter().map(|t| t.to_f64()).collect(), left_role, right_role)?;
        w.exact = Some(exact);
        Ok(w)
    }

    /// The first `count` knots of `a^k = τ^{-k}ℤ_τ⁺`; `0` is a true endpoint,
    /// the right end is a cut.
    pub fn tau_level(k: i32, count: usize) -> Result<Self> {
        let s = TauNumber::tau_pow(-k);
        let knots = tau_integers(count).into_iter().map(|x| x * s).collect();
        let mut w = KnotWindow::from_tau(knots, Role::Endpoint, Role::Cut)?;
        w.level = Some(k);
        Ok(w)
    }

    /// Knots of `a^k` in `[0, bound]`.
    pub fn tau_level_upto(k: i32, bound: TauNumber) -> Result<Self> {
        let up = TauNumber::tau_pow(k);
        let s = TauNumber::tau_pow(-k);
        let knots = tau_integers_upto(bound * up).into_iter().map(|x| x * s).collect();
        let mut w = KnotWindow::from_tau(knots, Role::Endpoint, Role::Cut)?;
        w.level = Some(k);
        Ok(w)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn exact(&self) -> Option<&[TauNumber]> {
        self.exact.as_deref()
    }

    pub fn level(&self) -> Option<i32> {
        self.level
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    /// Tolerance for identifying a float with a knot.
    pub fn match_tol(&self) -> f64 {
        let scale = self.knots.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        1e-12 * scale
    }

    pub fn index_of(&self, a: f64) -> Result<usize> {
        let tol = self.match_tol();
        let i = self.knots.partition_point(|&x| x < a - tol);
        match self.knots.get(i) {
            Some(&x) if (x - a).abs() <= tol => Ok(i),
            _ => Err(Error::KnotNotFound(a)),
        }
    }

    pub fn contains(&self, a: f64) -> bool {
        self.index_of(a).is_ok()
    }

    pub fn successor_at(&self, i: usize) -> Neighbor {
        match self.knots.get(i + 1) {
            Some(&x) => Neighbor::Knot(x),
            None => match self.right_role {
                Role::Endpoint => Neighbor::Infinite,
                Role::Cut => Neighbor::Cut,
            },
        }
    }

    pub fn predecessor_at(&self, i: usize) -> Neighbor {
        if i == 0 {
            match self.left_role {
                Role::Endpoint => Neighbor::Infinite,
                Role::Cut => Neighbor::Cut,
            }
        } else {
            Neighbor::Knot(self.knots[i - 1])
        }
    }

    pub fn successor(&self, a: f64) -> Result<Neighbor> {
        Ok(self.successor_at(self.index_of(a)?))
    }

    pub fn predecessor(&self, a: f64) -> Result<Neighbor> {
        Ok(self.predecessor_at(self.index_of(a)?))
    }

    /// Whether knot `i` is `inf J` or `sup J`.
    pub fn is_domain_endpoint(&self, i: usize) -> bool {
        (i == 0 && self.left_role == Role::Endpoint)
            || (i + 1 == self.knots.len() && self.right_role == Role::Endpoint)
    }

    /// Whether knot `i` sits at a cut edge of the window.
    pub fn is_cut_edge(&self, i: usize) -> bool {
        (i == 0 && self.left_role == Role::Cut) || (i + 1 == self.knots.len() && self.right_role == Role::Cut)
    }

    /// Number of knots between `i` and the nearest cut edge (`usize::MAX`
    /// when neither side is cut).
    pub fn distance_to_cut(&self, i: usize) -> usize {
        let left = if self.left_role == Role::Cut { i } else { usize::MAX };
        let right = if self.right_role == Role::Cut { self.knots.len() - 1 - i } else { usize::MAX };
        left.min(right)
    }

    /// Next lattice level: every long interval (length `τ^{-k}`) is split at
    /// `a + (a₊ - a)/τ`, short intervals are kept.
    pub fn refine(&self) -> Result<KnotWindow> {
        let (Some(exact), Some(k)) = (self.exact.as_ref(), self.level) else {
            return Err(Error::Domain("refine needs an exact tau-lattice window".into()));
        };
        let long = TauNumber::tau_pow(-k);
        let short = TauNumber::tau_pow(-k - 1);
        let mut out = vec![exact[0]];
        for w in exact.windows(2) {
            let gap = w[1] - w[0];
            if gap == long {
                out.push(w[0] + gap * TauNumber::TAU_INV);
            } else if gap != short {
                return Err(Error::Domain(format!("gap {gap} is not a level-{k} lattice gap")));
            }
            out.push(w[1]);
        }
        let mut w = KnotWindow::from_tau(out, self.left_role, self.right_role)?;
        w.level = Some(k + 1);
        Ok(w)
    }

    /// Uniform midpoint refinement of an arbitrary window.
    pub fn midpoint_refine(&self) -> KnotWindow {
        let mut out = Vec::with_capacity(2 * self.knots.len());
        for w in self.knots.windows(2) {
            out.push(w[0]);
            out.push(0.5 * (w[0] + w[1]));
        }
        out.push(*self.knots.last().unwrap());
        KnotWindow { knots: out, exact: None, level: None, left_role: self.left_role, right_role: self.right_role }
    }

    /// Gap letters (`L` for length `τ^{-k}`, `S` for `τ^{-k-1}`) of a lattice window.
    pub fn gap_word(&self) -> Option<String> {
        let exact = self.exact.as_ref()?;
        let long = TauNumber::tau_pow(-self.level?);
        Some(exact.windows(2).map(|w| if w[1] - w[0] == long { 'L' } else { 'S' }).collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&WindowJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: WindowJson = serde_json::from_str(s)?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum KnotJson {
    Exact { p: i64, q: i64 },
    Real(f64),
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    knots: Vec<KnotJson>,
    left_role: Role,
    right_role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<i32>,
}

impl From<&KnotWindow> for WindowJson {
    fn from(w: &KnotWindow) -> Self {
        let knots = match &w.exact {
            Some(ex) => ex.iter().map(|t| KnotJson::Exact { p: t.p, q: t.q }).collect(),
            None => w.knots.iter().map(|&x| KnotJson::Real(x)).collect(),
        };
        WindowJson { knots, left_role: w.left_role, right_role: w.right_role, level: w.level }
    }
}

impl TryFrom<WindowJson> for KnotWindow {
    type Error = Error;
    fn try_from(raw: WindowJson) -> Result<Self> {
        let all_exact: Option<Vec<TauNumber>> = raw
            .knots
            .iter()
            .map(|k| match k {
                KnotJson::Exact { p, q } => Some(TauNumber::new(*p, *q)),
                KnotJson::Real(_) => None,
            })
            .collect();
        let mut w = match all_exact {
            Some(ex) => KnotWindow::from_tau(ex, raw.left_role, raw.right_role)?,
            None => {
                let knots = raw
                    .knots
                    .iter()
                    .map(|k| match k {
                        KnotJson::Exact { p, q } => TauNumber::new(*p, *q).to_f64(),
                        KnotJson::Real(x) => *x,
                    })
                    .collect();
                KnotWindow::new(knots, raw.left_role, raw.right_role)?
            }
        };
        w.level = if w.exact.is_some() { raw.level } else { None };
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> TauNumber {
        TauNumber::new(p, q)
    }

    #[test]
    fn tau_relation() {
        assert_eq!(TauNumber::TAU * TauNumber::TAU, TauNumber::ONE + TauNumber::TAU);
        assert_eq!(TauNumber::TAU * TauNumber::TAU_INV, TauNumber::ONE);
        assert_eq!(TauNumber::tau_pow(3), t(1, 2));
        assert_eq!(TauNumber::tau_pow(-2) * TauNumber::tau_pow(2), TauNumber::ONE);
    }

    #[test]
    fn exact_order() {
        assert!(t(0, 1) > t(1, 0));
        assert!(t(2, 0) > t(0, 1));
        assert!(t(-1, 1) < t(1, 0));
        assert!(t(-1, 1) > t(0, 0));
        // 13 - 8τ ≈ 0.0557 > 0, 8 - 5τ ≈ -0.09 < 0
        assert_eq!(t(13, -8).signum(), 1);
        assert_eq!(t(8, -5).signum(), -1);
        assert_eq!(t(0, 0).signum(), 0);
    }

    #[test]
    fn first_tau_integers() {
        let want = [t(0, 0), t(1, 0), t(0, 1), t(1, 1), t(2, 1), t(1, 2)];
        assert_eq!(tau_integers(6), want);
    }

    #[test]
    fn fibonacci_word_prefix() {
        assert_eq!(fibonacci_word(21), "LSLLSLSLLSLLSLSLLSLSL");
        assert_eq!(fibonacci_word(1), "L");
        let w = fibonacci_word(200);
        let sub: String = w.chars().map(|c| if c == 'L' { "LS" } else { "L" }).collect();
        assert_eq!(&sub[..200], w);
    }

    #[test]
    fn gap_letters_of_first_integers() {
        let xs = tau_integers(22);
        let word: String = xs
            .windows(2)
            .map(|w| if w[1] - w[0] == TauNumber::ONE { 'L' } else { 'S' })
            .collect();
        assert_eq!(word, "LSLLSLSLLSLLSLSLLSLSL");
    }

    #[test]
    fn digits_have_no_adjacent_ones() {
        for x in tau_integers(300) {
            let d = x.tau_digits().expect("generated numbers are tau-integers");
            assert!(d.windows(2).all(|w| !(w[0] == 1 && w[1] == 1)), "{x}: {d:?}");
            let back = d.iter().enumerate().filter(|(_, &e)| e == 1).fold(TauNumber::ZERO, |acc, (k, _)| {
                acc + TauNumber::tau_pow(k as i32)
            });
            assert_eq!(back, x);
        }
        assert!(!TauNumber::TAU_INV.is_tau_integer());
        assert!(!t(-1, 0).is_tau_integer());
        assert!(!(t(1, 1) + TauNumber::TAU_INV).is_tau_integer());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(TauNumber::ONE).unwrap(), GapClass::LS);
        assert_eq!(classify(TauNumber::TAU).unwrap(), GapClass::SL);
        assert_eq!(classify(TauNumber::tau_pow(2)).unwrap(), GapClass::LL);
        assert_eq!(beta_mu(t(2, 1)).unwrap(), (TauNumber::ONE, t(1, 1)));
        // τ³ = τ + τ²·1 lies in τ + τ²ℤ_τ⁺
        assert_eq!(beta_mu(TauNumber::tau_pow(3)).unwrap(), (TauNumber::TAU, TauNumber::tau_pow(2)));
        assert!(classify(TauNumber::ZERO).is_err());
        assert!(classify(TauNumber::TAU_INV).is_err());
    }

    #[test]
    fn classes_match_gap_pattern() {
        let xs = tau_integers(120);
        for i in 1..xs.len() - 1 {
            let left = xs[i] - xs[i - 1];
            let right = xs[i + 1] - xs[i];
            let want = match (left == TauNumber::ONE, right == TauNumber::ONE) {
                (true, false) => GapClass::LS,
                (false, true) => GapClass::SL,
                (true, true) => GapClass::LL,
                (false, false) => unreachable!("two short gaps never touch"),
            };
            assert_eq!(classify(xs[i]).unwrap(), want, "knot {}", xs[i]);
        }
    }

    #[test]
    fn successor_and_predecessor() {
        let w = KnotWindow::new(vec![0.0, 1.0, TAU], Role::Endpoint, Role::Endpoint).unwrap();
        assert_eq!(w.successor(1.0).unwrap(), Neighbor::Knot(TAU));
        assert_eq!(w.predecessor(0.0).unwrap(), Neighbor::Infinite);
        assert_eq!(w.successor(TAU).unwrap(), Neighbor::Infinite);
        assert!(matches!(w.successor(0.5), Err(Error::KnotNotFound(_))));
        let c = KnotWindow::new(vec![0.0, 1.0, 2.0], Role::Cut, Role::Cut).unwrap();
        assert_eq!(c.predecessor(0.0).unwrap(), Neighbor::Cut);
    }

    #[test]
    fn window_validation() {
        assert!(KnotWindow::new(vec![0.0, 1.0], Role::Endpoint, Role::Cut).is_err());
        assert!(KnotWindow::new(vec![0.0, 1.0, 1.0], Role::Endpoint, Role::Cut).is_err());
    }

    #[test]
    fn refine_examples() {
        let w = KnotWindow::tau_level(0, 4).unwrap();
        let r = w.refine().unwrap();
        let want = [t(0, 0), TauNumber::TAU_INV, t(1, 0), t(0, 1), t(-1, 2), t(1, 1)];
        assert_eq!(r.exact().unwrap(), want);
        assert_eq!(r.level(), Some(1));
        // the short interval [1, τ] is untouched
        let e = r.exact().unwrap();
        assert!(e.windows(2).any(|w| w[0] == t(1, 0) && w[1] == t(0, 1)));
    }

    #[test]
    fn refine_matches_direct_level() {
        let w = KnotWindow::tau_level_upto(0, TauNumber::tau_pow(6)).unwrap();
        let mut cur = w.clone();
        for k in 1..=4 {
            cur = cur.refine().unwrap();
            let direct = KnotWindow::tau_level_upto(k, TauNumber::tau_pow(6)).unwrap();
            assert_eq!(cur.exact(), direct.exact(), "level {k}");
            assert_eq!(cur.gap_word().unwrap(), fibonacci_word(cur.len() - 1));
        }
    }

    #[test]
    fn json_round_trip() {
        let w = KnotWindow::tau_level(1, 7).unwrap();
        let back = KnotWindow::from_json(&w.to_json().unwrap()).unwrap();
        assert_eq!(back, w);
        let s = r#"{"knots":[0, 1.5, {"p":1,"q":1}], "left_role":"endpoint", "right_role":"cut"}"#;
        let m = KnotWindow::from_json(s).unwrap();
        assert!((m.knots()[2] - (1.0 + TAU)).abs() < 1e-15);
        assert_eq!(m.right_role, Role::Cut);
    }
}
