//! Closed-form extremal values and the regime thresholds for forbidden
//! rainbow directed stars.
//!
//! Every regime comparison against an irrational threshold is decided in
//! exact arithmetic: thresholds are numbers `r + sqrt(m)` with rational `r`
//! and integer `m`, compared by repeated squaring with sign bookkeeping.
//! Floating point is only used for reporting and for the continuity checks
//! at irrational boundaries.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::model::StarPattern;

pub type Rational = Ratio<i128>;

pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn int(x: i128) -> Rational {
    Rational::from_integer(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Sum,
    Min,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Sum => "sum",
            Objective::Min => "min",
        })
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(Objective::Sum),
            "min" => Ok(Objective::Min),
            other => Err(format!("unknown objective `{other}` (expected sum or min)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("pattern S_{{{p},{q}}} is not normalized; reverse the collection to get p <= q")]
    NotNormalized { p: usize, q: usize },
    #[error("thresholds are undefined for p = 0; use the exact out-star bounds")]
    ZeroInDegree,
    #[error("c = {c} < p + q = {edges}: every collection is rainbow-free")]
    Unconstrained { c: usize, edges: usize },
    #[error("outside the domain of every closed form: {0}")]
    OutsideDomain(String),
    #[error("adjacent formulas disagree at a regime boundary: {0}")]
    BranchMismatch(String),
}

/// Sign of `y + z * sqrt(a)`.
fn sign_linear(y: Rational, z: Rational, a: i128) -> Ordering {
    let zero = Rational::zero();
    if a == 0 || z.is_zero() {
        return y.cmp(&zero);
    }
    match (y.cmp(&zero), z.cmp(&zero)) {
        (Ordering::Less, Ordering::Less) | (Ordering::Equal, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Greater) | (Ordering::Equal, Ordering::Greater) => Ordering::Greater,
        (Ordering::Greater, _) => (y * y).cmp(&(z * z * int(a))),
        (Ordering::Less, _) => (z * z * int(a)).cmp(&(y * y)),
        (_, Ordering::Equal) => unreachable!(),
    }
}

/// Sign of `x + sqrt(a) - sqrt(b)`.
fn sign_surd_difference(x: Rational, a: i128, b: i128) -> Ordering {
    match sign_linear(x, int(1), a) {
        Ordering::Less => Ordering::Less,
        Ordering::Equal if b == 0 => Ordering::Equal,
        Ordering::Equal => Ordering::Less,
        // both sides nonnegative: compare squares
        Ordering::Greater => sign_linear(x * x + int(a) - int(b), x * int(2), a),
    }
}

/// A real number `rational + sqrt(radicand)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: Rational,
    radicand: i128,
}

impl Surd {
    pub fn new(rational: Rational, radicand: i128) -> Self {
        assert!(radicand >= 0, "negative radicand");
        let root = radicand.sqrt();
        if root * root == radicand {
            Surd { rational: rational + int(root), radicand: 0 }
        } else {
            Surd { rational, radicand }
        }
    }

    pub fn integer(x: i128) -> Self {
        Surd { rational: int(x), radicand: 0 }
    }

    pub fn from_rational(r: Rational) -> Self {
        Surd { rational: r, radicand: 0 }
    }

    pub fn rational_part(&self) -> Rational {
        self.rational
    }

    pub fn radicand(&self) -> i128 {
        self.radicand
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.radicand == 0).then_some(self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN) + (self.radicand as f64).sqrt()
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_surd_difference(self.rational - other.rational, self.radicand, other.radicand)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rational;
        let rs = if r.is_integer() { r.numer().to_string() } else { rational_string(r) };
        match (self.radicand, r.is_zero()) {
            (0, _) => f.write_str(&rs),
            (m, true) => write!(f, "sqrt({m})"),
            (m, false) => write!(f, "{rs}+sqrt({m})"),
        }
    }
}

/// A threshold value; `Infinite` compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Threshold {
    Finite(Surd),
    Infinite,
}

impl Threshold {
    pub fn integer(x: i128) -> Self {
        Threshold::Finite(Surd::integer(x))
    }

    pub fn exact(&self) -> String {
        match self {
            Threshold::Finite(s) => s.to_string(),
            Threshold::Infinite => "inf".to_string(),
        }
    }

    pub fn decimal(&self) -> String {
        match self {
            Threshold::Finite(s) => format!("{:.12}", s.to_f64()),
            Threshold::Infinite => "inf".to_string(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Threshold::Finite(s) => s.to_f64(),
            Threshold::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(&self) -> Option<Surd> {
        match self {
            Threshold::Finite(s) => Some(*s),
            Threshold::Infinite => None,
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Threshold", 2)?;
        st.serialize_field("exact", &self.exact())?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Chain {
    /// `t2 <= t3 <= t4`
    First,
    /// `t4 <= t3 <= t2`
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdSet {
    pub p: usize,
    pub q: usize,
    pub t1: Threshold,
    pub t2: Threshold,
    pub t3: Threshold,
    pub t4: Threshold,
    pub chain: Chain,
}

fn check_general(p: usize, q: usize) -> Result<(), BoundError> {
    if p == 0 {
        return Err(BoundError::ZeroInDegree);
    }
    if p > q {
        return Err(BoundError::NotNormalized { p, q });
    }
    Ok(())
}

/// `q(q-p-1)^2 - p(p+q-1)^2`; its sign orders `t2`, `t3`, `t4` when `q >= p + 2`.
pub fn chain_discriminant(p: usize, q: usize) -> i128 {
    let (p, q) = (p as i128, q as i128);
    q * (q - p - 1).pow(2) - p * (p + q - 1).pow(2)
}

pub fn thresholds(p: usize, q: usize) -> Result<ThresholdSet, BoundError> {
    check_general(p, q)?;
    let (pi, qi) = (p as i128, q as i128);
    let t2 = if q >= p + 2 {
        Threshold::Finite(Surd::from_rational(Rational::new(
            (qi - 1) * (pi + qi - 1),
            qi - pi - 1,
        )))
    } else {
        Threshold::Infinite
    };
    // For q <= p + 1 the second chain always holds (t2 is infinite); the
    // discriminant only decides the order once t2 is finite.
    let chain = if q >= p + 2 && chain_discriminant(p, q) >= 0 {
        Chain::First
    } else {
        Chain::Second
    };
    Ok(ThresholdSet {
        p,
        q,
        t1: Threshold::integer(2 * pi + qi - 1),
        t2,
        t3: Threshold::Finite(Surd::new(int(pi + qi - 1), pi * qi)),
        t4: Threshold::Finite(Surd::new(int(qi - 1), (qi - 1) * (qi - pi))),
        chain,
    })
}

/// Color count at which the two sum regimes meet: `p + 2q - 1 + 2 sqrt(pq)`.
pub fn sum_threshold(p: usize, q: usize) -> Result<Threshold, BoundError> {
    check_general(p, q)?;
    let (pi, qi) = (p as i128, q as i128);
    Ok(Threshold::Finite(Surd::new(int(pi + 2 * qi - 1), 4 * pi * qi)))
}

/// Piece of the min-objective coefficient, named after the construction realizing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MinRegime {
    /// `c <= t1`
    BOnly,
    /// `t1 <= c <= t2` (first chain) or `t1 <= c <= t3` (second chain)
    AbMix,
    /// `t2 <= c <= t4`, first chain only
    AOnly,
    /// `c >= t4` (first chain) or `c >= t3` (second chain)
    AcMin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SumRegime {
    /// `c <= p + 2q - 1 + 2 sqrt(pq)`
    Complete,
    /// `c >= p + 2q - 1 + 2 sqrt(pq)`
    Split,
}

/// Closed interval `[lo, hi]` of `c` in which a min regime applies.
pub fn min_regime_interval(set: &ThresholdSet, regime: MinRegime) -> Option<(Threshold, Threshold)> {
    let zero = Threshold::integer(0);
    match (regime, set.chain) {
        (MinRegime::BOnly, _) => Some((zero, set.t1)),
        (MinRegime::AbMix, Chain::First) => Some((set.t1, set.t2)),
        (MinRegime::AbMix, Chain::Second) => Some((set.t1, set.t3)),
        (MinRegime::AOnly, Chain::First) => Some((set.t2, set.t4)),
        (MinRegime::AOnly, Chain::Second) => None,
        (MinRegime::AcMin, Chain::First) => Some((set.t4, Threshold::Infinite)),
        (MinRegime::AcMin, Chain::Second) => Some((set.t3, Threshold::Infinite)),
    }
}

fn check_coefficient_domain(p: usize, q: usize, c: usize) -> Result<(), BoundError> {
    check_general(p, q)?;
    if c < p + q {
        return Err(BoundError::Unconstrained { c, edges: p + q });
    }
    Ok(())
}

/// Min regimes whose closed interval contains `c` (two at a boundary).
pub fn min_regimes(p: usize, q: usize, c: usize) -> Result<Vec<MinRegime>, BoundError> {
    check_coefficient_domain(p, q, c)?;
    let set = thresholds(p, q)?;
    let at = Threshold::integer(c as i128);
    Ok([MinRegime::BOnly, MinRegime::AbMix, MinRegime::AOnly, MinRegime::AcMin]
        .into_iter()
        .filter(|&r| matches!(min_regime_interval(&set, r), Some((lo, hi)) if lo <= at && at <= hi))
        .collect())
}

pub fn sum_regimes(p: usize, q: usize, c: usize) -> Result<Vec<SumRegime>, BoundError> {
    check_coefficient_domain(p, q, c)?;
    let t = sum_threshold(p, q)?;
    let at = Threshold::integer(c as i128);
    let mut out = Vec::new();
    if at <= t {
        out.push(SumRegime::Complete);
    }
    if at >= t {
        out.push(SumRegime::Split);
    }
    Ok(out)
}

/// Coefficient of `n^2` for one min regime, as a rational function of `c`.
pub fn min_formula(regime: MinRegime, p: usize, q: usize, c: Rational) -> Rational {
    let (p, q) = (int(p as i128), int(q as i128));
    let one = int(1);
    let k = p + q - one;
    match regime {
        MinRegime::BOnly => k * k / (c * c),
        MinRegime::AbMix => {
            let s = c - q + one;
            s * s * k * k / (int(4) * c * c * p * (c - p - q + one))
        }
        MinRegime::AOnly => (q - one) / c,
        MinRegime::AcMin => {
            let top = c * c - (p - one) * (q - one);
            top * top / (int(4) * c * c * (c - p + one) * (c - q + one))
        }
    }
}

/// Same as [`min_formula`] at a real `c`.
pub fn min_formula_f64(regime: MinRegime, p: usize, q: usize, c: f64) -> f64 {
    let (p, q) = (p as f64, q as f64);
    let k = p + q - 1.0;
    match regime {
        MinRegime::BOnly => k * k / (c * c),
        MinRegime::AbMix => (c - q + 1.0).powi(2) * k * k / (4.0 * c * c * p * (c - p - q + 1.0)),
        MinRegime::AOnly => (q - 1.0) / c,
        MinRegime::AcMin => {
            (c * c - (p - 1.0) * (q - 1.0)).powi(2) / (4.0 * c * c * (c - p + 1.0) * (c - q + 1.0))
        }
    }
}

pub fn sum_formula(regime: SumRegime, p: usize, q: usize, c: Rational) -> Rational {
    let (p, q) = (int(p as i128), int(q as i128));
    let one = int(1);
    match regime {
        SumRegime::Complete => p + q - one,
        SumRegime::Split => {
            let s = c - p + one;
            s * s / (int(4) * (c - q + one)) + p - one
        }
    }
}

pub fn sum_formula_f64(regime: SumRegime, p: usize, q: usize, c: f64) -> f64 {
    let (p, q) = (p as f64, q as f64);
    match regime {
        SumRegime::Complete => p + q - 1.0,
        SumRegime::Split => (c - p + 1.0).powi(2) / (4.0 * (c - q + 1.0)) + p - 1.0,
    }
}

fn agree<R: fmt::Debug + Copy>(
    values: impl IntoIterator<Item = (R, Rational)>,
    context: impl Fn() -> String,
) -> Result<Rational, BoundError> {
    let values: Vec<_> = values.into_iter().collect();
    let first = values.first().map(|&(_, v)| v).expect("at least one regime applies");
    if values.iter().any(|&(_, v)| v != first) {
        return Err(BoundError::BranchMismatch(format!("{}: {values:?}", context())));
    }
    Ok(first)
}

/// Asymptotic coefficient of `n^2` in the largest possible `min_i e(G_i)`.
pub fn coefficient_min(p: usize, q: usize, c: usize) -> Result<Rational, BoundError> {
    let regimes = min_regimes(p, q, c)?;
    let cr = int(c as i128);
    agree(regimes.iter().map(|&r| (r, min_formula(r, p, q, cr))), || {
        format!("min coefficient at p={p} q={q} c={c}")
    })
}

/// Asymptotic coefficient of `n^2` in the largest possible `sum_i e(G_i)`.
pub fn coefficient_sum(p: usize, q: usize, c: usize) -> Result<Rational, BoundError> {
    let regimes = sum_regimes(p, q, c)?;
    let cr = int(c as i128);
    agree(regimes.iter().map(|&r| (r, sum_formula(r, p, q, cr))), || {
        format!("sum coefficient at p={p} q={q} c={c}")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundKind {
    Exact,
    Asymptotic,
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Integer(u64),
    Coefficient(Rational),
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            BoundValue::Integer(v) => serializer.serialize_u64(*v),
            BoundValue::Coefficient(r) => serializer.serialize_str(&rational_string(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub value: BoundValue,
    pub regime: String,
    pub domain_note: String,
    /// Pattern the bound was evaluated for (after normalization).
    pub pattern: StarPattern,
    pub normalized: bool,
    pub objective: Objective,
}

impl BoundResult {
    pub fn integer(&self) -> Option<u64> {
        match self.value {
            BoundValue::Integer(v) => Some(v),
            BoundValue::Coefficient(_) => None,
        }
    }
}

/// Exact largest `min_i e(G_i)` for rainbow-`S_{0,q}`-free collections, `n > c >= q >= 1`.
pub fn out_star_min(n: u64, c: u64, q: u64) -> u64 {
    let a = n * (q - 1);
    (a / c) * (n - 1) + a % c
}

/// Exact largest `sum_i e(G_i)` for rainbow-`S_{0,q}`-free collections, `n > c >= q >= 1`.
pub fn out_star_sum(n: u64, q: u64) -> u64 {
    (q - 1) * (n * n - n)
}

/// Closed-form bound for `(pat, n, c, objective)`. Patterns with `p > q` are
/// evaluated for the reversed pattern.
pub fn exact_bound(pat: StarPattern, n: usize, c: usize, objective: Objective) -> Result<BoundResult, BoundError> {
    let (norm, swapped) = pat.normalized();
    let (p, q) = (norm.p, norm.q);
    let (nn, cc, qq) = (n as u64, c as u64, q as u64);
    let result = |kind, value, regime: &str, note: String| BoundResult {
        kind,
        value,
        regime: regime.to_string(),
        domain_note: note,
        pattern: norm,
        normalized: swapped,
        objective,
    };
    if n == 0 || c == 0 {
        return Err(BoundError::OutsideDomain("n and c must be positive".into()));
    }
    if c < p + q || n <= p + q {
        let per_color = nn * (nn - 1);
        let value = match objective {
            Objective::Sum => cc * per_color,
            Objective::Min => per_color,
        };
        let note = if c < p + q {
            format!("c < p + q = {}: complete digraphs in every color are rainbow-free", p + q)
        } else {
            format!("n <= p + q = {}: the star does not fit; complete digraphs are rainbow-free", p + q)
        };
        return Ok(result(BoundKind::Unconstrained, BoundValue::Integer(value), "trivial", note));
    }
    if p == 0 {
        return Ok(if n > c {
            match objective {
                Objective::Sum => result(
                    BoundKind::Exact,
                    BoundValue::Integer(out_star_sum(nn, qq)),
                    "out_star_sum",
                    "(q-1)(n^2-n); requires n > c >= q >= 1".into(),
                ),
                Objective::Min => result(
                    BoundKind::Exact,
                    BoundValue::Integer(out_star_min(nn, cc, qq)),
                    "out_star_min",
                    "floor(n(q-1)/c)(n-1) + r with r = n(q-1) mod c; requires n > c >= q >= 1".into(),
                ),
            }
        } else {
            // q < n <= c
            match objective {
                Objective::Sum => result(
                    BoundKind::Exact,
                    BoundValue::Integer((qq - 1) * cc * nn),
                    "out_star_few_vertices",
                    "sum = (q-1)cn for c >= n >= q: every vertex sends q-1 edges in every color".into(),
                ),
                Objective::Min => result(
                    BoundKind::Exact,
                    BoundValue::Integer((qq - 1) * nn),
                    "out_star_few_vertices",
                    "min = (q-1)n for c >= n >= q: every vertex sends q-1 edges in every color".into(),
                ),
            }
        });
    }
    if (p, q) == (1, 1) {
        return match objective {
            Objective::Sum if c <= 3 => Ok(result(
                BoundKind::Exact,
                BoundValue::Integer(nn * nn - nn),
                "path_sum_few_colors",
                "n^2 - n for 2 <= c <= 3, n >= 3".into(),
            )),
            Objective::Sum => Ok(result(
                BoundKind::Exact,
                BoundValue::Integer(cc * (nn * nn / 4)),
                "path_sum_many_colors",
                "c floor(n^2/4) for c >= 4, n >= 3".into(),
            )),
            Objective::Min if n >= 4 => Ok(result(
                BoundKind::Exact,
                BoundValue::Integer(nn * nn / 4),
                "path_min",
                "floor(n^2/4) for c >= 2, n >= 4".into(),
            )),
            Objective::Min => Err(BoundError::OutsideDomain(
                "the floor(n^2/4) bound for S_{1,1} needs n >= 4; n = 3 is a known exception, use the exact oracle".into(),
            )),
        };
    }
    let mut out = asymptotic_bound(norm, c, objective)?;
    out.normalized = swapped;
    out.domain_note = format!("{}; evaluated for n = {n}", out.domain_note);
    Ok(out)
}

/// Asymptotic coefficient for `1 <= p <= q` (after normalization), `c >= p + q`.
pub fn asymptotic_bound(pat: StarPattern, c: usize, objective: Objective) -> Result<BoundResult, BoundError> {
    let (norm, swapped) = pat.normalized();
    let (p, q) = (norm.p, norm.q);
    let (value, regime) = match objective {
        Objective::Sum => {
            let regimes = sum_regimes(p, q, c)?;
            let names: Vec<String> = regimes.iter().map(|r| format!("{r:?}")).collect();
            (coefficient_sum(p, q, c)?, format!("sum:{}", names.join("+")))
        }
        Objective::Min => {
            let regimes = min_regimes(p, q, c)?;
            let names: Vec<String> = regimes.iter().map(|r| format!("{r:?}")).collect();
            (coefficient_min(p, q, c)?, format!("min:{}", names.join("+")))
        }
    };
    Ok(BoundResult {
        kind: BoundKind::Asymptotic,
        value: BoundValue::Coefficient(value),
        regime,
        domain_note: "coefficient of n^2; the bound is value*n^2 + o(n^2)".into(),
        pattern: norm,
        normalized: swapped,
        objective,
    })
}

/// `|r|` as f64, used in tolerance checks.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn surd_ordering_is_exact() {
        let s2 = Surd::new(int(0), 2);
        assert!(Surd::from_rational(r(141421, 100000)) < s2);
        assert!(Surd::from_rational(r(141422, 100000)) > s2);
        assert_eq!(Surd::new(int(1), 9), Surd::integer(4));
        // 2 + sqrt(2) vs 1 + sqrt(5): 3.414 vs 3.236
        assert!(Surd::new(int(2), 2) > Surd::new(int(1), 5));
        // sqrt(8) == 2 sqrt(2) is not representable; compare sqrt(8) with 1 + sqrt(3) (2.828 vs 2.732)
        assert!(Surd::new(int(0), 8) > Surd::new(int(1), 3));
        assert!(Surd::new(int(-3), 2) < Surd::integer(0));
        assert_eq!(Surd::new(int(2), 2).to_string(), "2+sqrt(2)");
    }

    #[test]
    fn surd_ordering_agrees_with_floats() {
        for a in -6..6i128 {
            for m in 0..30i128 {
                for b in -6..6i128 {
                    for k in 0..30i128 {
                        let x = Surd::new(int(a), m);
                        let y = Surd::new(int(b), k);
                        let (fx, fy) = (x.to_f64(), y.to_f64());
                        if (fx - fy).abs() > 1e-9 {
                            assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap(), "{x} vs {y}");
                        } else {
                            assert_eq!(x.cmp(&y), Ordering::Equal, "{x} vs {y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn threshold_examples() {
        let t = thresholds(1, 2).unwrap();
        assert_eq!(t.t1, Threshold::integer(3));
        assert_eq!(t.t2, Threshold::Infinite);
        assert_eq!(t.t3.exact(), "2+sqrt(2)");
        assert_eq!(t.t4, Threshold::integer(2));
        assert_eq!(t.chain, Chain::Second);

        let t = thresholds(1, 3).unwrap();
        assert_eq!((t.t1, t.t2, t.t4), (Threshold::integer(4), Threshold::integer(6), Threshold::integer(4)));
        assert_eq!(t.t3.exact(), "3+sqrt(3)");
        assert_eq!(t.chain, Chain::Second);

        let t = thresholds(1, 10).unwrap();
        assert_eq!(t.t1, Threshold::integer(11));
        assert_eq!(t.t2, Threshold::Finite(Surd::from_rational(r(90, 8))));
        assert_eq!(t.t3.exact(), "10+sqrt(10)");
        assert_eq!(t.t4, Threshold::integer(18));
        assert_eq!(t.chain, Chain::First);
        assert_eq!(t.t3.decimal(), "13.162277660168");

        assert_eq!(thresholds(0, 2), Err(BoundError::ZeroInDegree));
        assert_eq!(thresholds(3, 2), Err(BoundError::NotNormalized { p: 3, q: 2 }));
    }

    #[test]
    fn single_edge_path_uses_second_chain() {
        // the discriminant is 0 here but t2 is infinite
        assert_eq!(chain_discriminant(1, 1), 0);
        assert_eq!(thresholds(1, 1).unwrap().chain, Chain::Second);
    }

    #[test]
    fn min_coefficient_examples() {
        assert_eq!(coefficient_min(1, 2, 3).unwrap(), r(4, 9));
        assert_eq!(coefficient_min(1, 2, 4).unwrap(), r(1, 3));
        assert_eq!(coefficient_min(1, 10, 12).unwrap(), r(3, 4));
        assert_eq!(min_regimes(1, 2, 3).unwrap(), vec![MinRegime::BOnly, MinRegime::AbMix]);
        assert_eq!(coefficient_min(1, 2, 2), Err(BoundError::Unconstrained { c: 2, edges: 3 }));
        assert_eq!(coefficient_min(0, 2, 4), Err(BoundError::ZeroInDegree));
    }

    #[test]
    fn sum_coefficient_examples() {
        assert_eq!(coefficient_sum(1, 2, 3).unwrap(), int(2));
        assert_eq!(coefficient_sum(1, 2, 8).unwrap(), r(16, 7));
        assert_eq!(sum_regimes(1, 1, 4).unwrap(), vec![SumRegime::Complete, SumRegime::Split]);
        assert_eq!(coefficient_sum(1, 1, 4).unwrap(), int(1));
    }

    #[test]
    fn path_min_coefficient_is_quarter() {
        for c in 2..20 {
            assert_eq!(coefficient_min(1, 1, c).unwrap(), r(1, 4), "c={c}");
        }
    }

    #[test]
    fn exact_bound_examples() {
        let pat = |p, q| StarPattern::new(p, q).unwrap();
        let b = exact_bound(pat(0, 2), 4, 3, Objective::Sum).unwrap();
        assert_eq!((b.kind, b.integer()), (BoundKind::Exact, Some(12)));
        let b = exact_bound(pat(0, 2), 5, 3, Objective::Min).unwrap();
        assert_eq!((b.kind, b.integer()), (BoundKind::Exact, Some(6)));
        let b = exact_bound(pat(1, 1), 5, 2, Objective::Min).unwrap();
        assert_eq!((b.kind, b.integer()), (BoundKind::Exact, Some(6)));
        assert!(matches!(exact_bound(pat(1, 1), 3, 2, Objective::Min), Err(BoundError::OutsideDomain(_))));
        let b = exact_bound(pat(1, 1), 3, 2, Objective::Sum).unwrap();
        assert_eq!(b.integer(), Some(6));
        let b = exact_bound(pat(1, 1), 4, 4, Objective::Sum).unwrap();
        assert_eq!(b.integer(), Some(16));

        // reversed out-star is normalized
        let b = exact_bound(pat(2, 0), 4, 3, Objective::Sum).unwrap();
        assert!(b.normalized);
        assert_eq!(b.integer(), Some(12));

        // trivial regimes
        let b = exact_bound(pat(1, 2), 10, 2, Objective::Sum).unwrap();
        assert_eq!((b.kind, b.integer()), (BoundKind::Unconstrained, Some(180)));
        let b = exact_bound(pat(0, 3), 3, 5, Objective::Min).unwrap();
        assert_eq!((b.kind, b.integer()), (BoundKind::Unconstrained, Some(6)));

        // few vertices, many colors
        let b = exact_bound(pat(0, 2), 4, 6, Objective::Sum).unwrap();
        assert_eq!((b.kind, b.integer()), (BoundKind::Exact, Some(24)));

        let b = exact_bound(pat(1, 2), 50, 4, Objective::Min).unwrap();
        assert_eq!((b.kind, b.value), (BoundKind::Asymptotic, BoundValue::Coefficient(r(1, 3))));
    }

    #[test]
    fn out_star_min_decreases_with_colors() {
        for q in 1..6u64 {
            for n in 3..40u64 {
                for c in q..n - 1 {
                    assert!(out_star_min(n, c + 1, q) <= out_star_min(n, c, q), "n={n} c={c} q={q}");
                }
            }
        }
    }
}
