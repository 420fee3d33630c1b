//! Deterministic generators for the extremal constructions, with predicted
//! edge counts.
//!
//! Vertices are laid out part by part, parts in catalog order. Part sizes
//! come from the largest-remainder method over exact rational targets (ties
//! go to the lower part index); color subsets are taken in colex order.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bounds::{self, MinRegime, Objective, Rational, SumRegime, Threshold};
use crate::model::{DigraphCollection, ModelError};

/// Builders use dense storage up to this many vertices.
pub const BUILD_DENSE_THRESHOLD: usize = 16_384;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionFamily {
    CompletePrefix,
    AssignedOut,
    CyclicRemainder,
    AcSplitSum,
    BOnly,
    AbMix,
    AOnly,
    AcMin,
    S11Complete1,
    BipartiteS11,
    RemarkCn,
    RemarkNq,
    TriangleN3,
}

impl ConstructionFamily {
    pub const ALL: [ConstructionFamily; 13] = [
        ConstructionFamily::CompletePrefix,
        ConstructionFamily::AssignedOut,
        ConstructionFamily::CyclicRemainder,
        ConstructionFamily::AcSplitSum,
        ConstructionFamily::BOnly,
        ConstructionFamily::AbMix,
        ConstructionFamily::AOnly,
        ConstructionFamily::AcMin,
        ConstructionFamily::S11Complete1,
        ConstructionFamily::BipartiteS11,
        ConstructionFamily::RemarkCn,
        ConstructionFamily::RemarkNq,
        ConstructionFamily::TriangleN3,
    ];

    pub fn id(self) -> &'static str {
        use ConstructionFamily::*;
        match self {
            CompletePrefix => "COMPLETE_PREFIX",
            AssignedOut => "ASSIGNED_OUT",
            CyclicRemainder => "CYCLIC_REMAINDER",
            AcSplitSum => "AC_SPLIT_SUM",
            BOnly => "B_ONLY",
            AbMix => "AB_MIX",
            AOnly => "A_ONLY",
            AcMin => "AC_MIN",
            S11Complete1 => "S11_COMPLETE1",
            BipartiteS11 => "BIPARTITE_S11",
            RemarkCn => "REMARK_CN",
            RemarkNq => "REMARK_NQ",
            TriangleN3 => "TRIANGLE_N3",
        }
    }

    /// Whether predicted counts are exact integers (for `B_ONLY`, only when
    /// the part count divides `n`).
    pub fn is_exact(self) -> bool {
        use ConstructionFamily::*;
        !matches!(self, AcSplitSum | AbMix | AOnly | AcMin)
    }
}

impl fmt::Display for ConstructionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ConstructionFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| format!("unknown construction family `{s}`"))
    }
}

impl Serialize for ConstructionFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family} is not applicable: {reason}")]
    NotApplicable { family: ConstructionFamily, reason: String },
    #[error("{family} needs {parts} parts but n = {n}")]
    TooManyParts { family: ConstructionFamily, parts: usize, n: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    pub n: usize,
    pub c: usize,
    pub p: usize,
    pub q: usize,
}

impl Params {
    pub fn new(n: usize, c: usize, p: usize, q: usize) -> Self {
        Params { n, c, p, q }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prediction {
    /// Exact count guaranteed by the construction.
    Exact(u64),
    /// Closed-form value the construction is not guaranteed to reach.
    Theorem(u64),
    /// Coefficient of `n^2`.
    Coefficient(Rational),
}

impl Prediction {
    pub fn exact(&self) -> Option<u64> {
        match self {
            Prediction::Exact(v) => Some(*v),
            _ => None,
        }
    }
}

impl Serialize for Prediction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Prediction", 2)?;
        match self {
            Prediction::Exact(v) => {
                st.serialize_field("kind", "exact")?;
                st.serialize_field("value", v)?;
            }
            Prediction::Theorem(v) => {
                st.serialize_field("kind", "theorem")?;
                st.serialize_field("value", v)?;
            }
            Prediction::Coefficient(r) => {
                st.serialize_field("kind", "coefficient")?;
                st.serialize_field("value", &bounds::rational_string(r))?;
            }
        }
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part {
    pub label: String,
    /// 1-based; the part occupies `first_vertex .. first_vertex + size`.
    pub first_vertex: usize,
    pub size: usize,
    pub colors: Vec<usize>,
}

impl Part {
    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.first_vertex..self.first_vertex + self.size
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionOutput {
    pub family: ConstructionFamily,
    pub params: Params,
    pub collection: DigraphCollection,
    pub predicted_sum: Prediction,
    pub predicted_min: Prediction,
    pub parts: Vec<Part>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub family: ConstructionFamily,
    pub applicability: &'static str,
    pub prediction: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    use ConstructionFamily::*;
    let entry = |family, applicability, prediction| CatalogEntry { family, applicability, prediction };
    vec![
        entry(CompletePrefix, "p <= q, c >= p+q-1", "exact: sum (p+q-1)(n^2-n)"),
        entry(AssignedOut, "p = 0, c >= q >= 1", "exact: sum (q-1)(n^2-n), min from balanced parts"),
        entry(
            CyclicRemainder,
            "p = 0, n > c >= q >= 1",
            "min floor(n(q-1)/c)(n-1)+r, exact when (q-1) divides r; sum exact",
        ),
        entry(
            AcSplitSum,
            "1 <= p <= q, c >= p+q, c+p+1 >= 2q",
            "sum coefficient (c-p+1)^2/(4(c-q+1)) + p-1",
        ),
        entry(
            BOnly,
            "p <= q, p+q >= 2, c >= p+q-1, n >= binom(c,p+q-1)",
            "min coefficient ((p+q-1)/c)^2; exact when binom(c,p+q-1) divides n",
        ),
        entry(
            AbMix,
            "1 <= p <= q, c >= p+q, t1 <= c <= t2, n >= binom(c,p+q-1)+binom(c,q-1)",
            "min coefficient (c-q+1)^2(p+q-1)^2/(4c^2 p(c-p-q+1))",
        ),
        entry(AOnly, "p <= q, q >= 2, c >= q, n >= binom(c,q-1)", "min coefficient (q-1)/c"),
        entry(
            AcMin,
            "1 <= p <= q, c >= p+q, c >= t4, n >= binom(c,q-1)+binom(c,p-1)",
            "min coefficient (c^2-(p-1)(q-1))^2/(4c^2(c-p+1)(c-q+1))",
        ),
        entry(S11Complete1, "p = q = 1, c >= 1", "exact: sum n^2-n"),
        entry(BipartiteS11, "p = q = 1, n >= 2", "exact: every color floor(n^2/4)"),
        entry(RemarkCn, "p = 0, c >= n >= q >= 1", "exact: every color (q-1)n"),
        entry(RemarkNq, "p <= q, n <= p+q", "exact: every color n^2-n"),
        entry(TriangleN3, "n = 3, c = 2, p = q = 1", "exact: every color 3"),
    ]
}

/// `binom(n, k)`, or `None` on overflow.
pub fn binom(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
        if acc > usize::MAX as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

/// All `k`-subsets of `1..=c` in colex order.
pub fn colex_subsets(c: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(next: usize, c: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in next..=c {
            cur.push(x);
            rec(x + 1, c, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, c, k, &mut Vec::with_capacity(k), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Largest-remainder rounding of `n * w_i` (weights must sum to 1).
pub fn apportion(n: usize, weights: &[Rational]) -> Vec<usize> {
    let total: Rational = weights.iter().sum();
    assert_eq!(total, Rational::from_integer(1), "weights must sum to 1");
    let nr = Rational::from_integer(n as i128);
    let mut sizes = Vec::with_capacity(weights.len());
    let mut fracs = Vec::with_capacity(weights.len());
    for (k, w) in weights.iter().enumerate() {
        assert!(*w >= Rational::zero(), "negative weight");
        let t = nr * w;
        let fl = t.floor();
        sizes.push(fl.to_integer() as usize);
        fracs.push((t - fl, k));
    }
    let assigned: usize = sizes.iter().sum();
    fracs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, k) in fracs.iter().take(n - assigned) {
        sizes[k] += 1;
    }
    sizes
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i128)
}

fn not_applicable(family: ConstructionFamily, reason: String) -> ConstructionError {
    ConstructionError::NotApplicable { family, reason }
}

fn part_count(family: ConstructionFamily, counts: &[(usize, usize)]) -> Result<usize, ConstructionError> {
    let mut total = 0usize;
    for &(c, k) in counts {
        let b = binom(c, k).ok_or_else(|| not_applicable(family, format!("binom({c},{k}) overflows")))?;
        total = total
            .checked_add(b)
            .ok_or_else(|| not_applicable(family, "part count overflows".into()))?;
    }
    Ok(total)
}

/// Checks the applicability domain, reporting the first failed inequality.
pub fn check_applicable(family: ConstructionFamily, params: Params) -> Result<(), ConstructionError> {
    use ConstructionFamily::*;
    let Params { n, c, p, q } = params;
    macro_rules! need {
        ($cond:expr, $($fmt:tt)*) => {
            if !$cond {
                return Err(not_applicable(family, format!($($fmt)*)));
            }
        };
    }
    need!(n >= 1 && c >= 1, "n >= 1 and c >= 1 fail: n = {n}, c = {c}");
    need!(p + q >= 1, "p + q >= 1 fails");
    need!(p <= q, "p <= q fails: p = {p}, q = {q} (reverse the pattern)");
    let parts_fit = |parts: usize| -> Result<(), ConstructionError> {
        if parts > n {
            Err(ConstructionError::TooManyParts { family, parts, n })
        } else {
            Ok(())
        }
    };
    let at = Threshold::integer(c as i128);
    match family {
        CompletePrefix => need!(c + 1 >= p + q, "c >= p+q-1 fails: c = {c}, p+q-1 = {}", p + q - 1),
        AssignedOut => {
            need!(p == 0, "p = 0 fails: p = {p}");
            need!(c >= q, "c >= q fails: c = {c}, q = {q}");
        }
        CyclicRemainder => {
            need!(p == 0, "p = 0 fails: p = {p}");
            need!(n > c, "n > c fails: n = {n}, c = {c}");
            need!(c >= q, "c >= q fails: c = {c}, q = {q}");
        }
        AcSplitSum => {
            need!(p >= 1, "p >= 1 fails");
            need!(c >= p + q, "c >= p+q fails: c = {c}, p+q = {}", p + q);
            need!(c + p + 1 >= 2 * q, "c+p+1 >= 2q fails: c+p+1 = {}, 2q = {}", c + p + 1, 2 * q);
        }
        BOnly => {
            need!(p + q >= 2, "p+q >= 2 fails");
            need!(c + 1 >= p + q, "c >= p+q-1 fails: c = {c}, p+q-1 = {}", p + q - 1);
            parts_fit(part_count(family, &[(c, p + q - 1)])?)?;
        }
        AbMix => {
            need!(p >= 1, "p >= 1 fails");
            need!(c >= p + q, "c >= p+q fails: c = {c}, p+q = {}", p + q);
            let t = bounds::thresholds(p, q).map_err(|e| not_applicable(family, e.to_string()))?;
            need!(at >= t.t1, "c >= t1 fails: c = {c}, t1 = {}", t.t1.exact());
            need!(at <= t.t2, "c <= t2 fails: c = {c}, t2 = {}", t.t2.exact());
            parts_fit(part_count(family, &[(c, p + q - 1), (c, q - 1)])?)?;
        }
        AOnly => {
            need!(q >= 2, "q >= 2 fails: q = {q}");
            need!(c >= q, "c >= q fails: c = {c}, q = {q}");
            parts_fit(part_count(family, &[(c, q - 1)])?)?;
        }
        AcMin => {
            need!(p >= 1, "p >= 1 fails");
            need!(c >= p + q, "c >= p+q fails: c = {c}, p+q = {}", p + q);
            let t = bounds::thresholds(p, q).map_err(|e| not_applicable(family, e.to_string()))?;
            need!(at >= t.t4, "c >= t4 fails: c = {c}, t4 = {}", t.t4.exact());
            parts_fit(part_count(family, &[(c, q - 1), (c, p - 1)])?)?;
        }
        S11Complete1 => need!((p, q) == (1, 1), "p = q = 1 fails: p = {p}, q = {q}"),
        BipartiteS11 => {
            need!((p, q) == (1, 1), "p = q = 1 fails: p = {p}, q = {q}");
            need!(n >= 2, "n >= 2 fails: n = {n}");
        }
        RemarkCn => {
            need!(p == 0, "p = 0 fails: p = {p}");
            need!(c >= n, "c >= n fails: c = {c}, n = {n}");
            need!(n >= q, "n >= q fails: n = {n}, q = {q}");
        }
        RemarkNq => need!(n <= p + q, "n <= p+q fails: n = {n}, p+q = {}", p + q),
        TriangleN3 => need!(
            (n, c, p, q) == (3, 2, 1, 1),
            "(n, c, p, q) = (3, 2, 1, 1) fails: got ({n}, {c}, {p}, {q})"
        ),
    }
    Ok(())
}

/// Exact part fractions `(A, C)` of the sum construction.
pub fn ac_split_fractions(p: usize, q: usize, c: usize) -> (Rational, Rational) {
    let d = int(2) * (int(c) - int(q) + int(1));
    ((int(c) - int(p) + int(1)) / d, (int(c + p + 1) - int(2 * q)) / d)
}

/// Exact fractions `(A, B)` for the mixed min construction.
pub fn ab_mix_fractions(p: usize, q: usize, c: usize) -> (Rational, Rational) {
    let (p, q, c) = (int(p), int(q), int(c));
    let one = int(1);
    let d = int(2) * p * (c - p - q + one);
    let k = p + q - one;
    let a = k * (c - int(2) * p - q + one) / d;
    let b = ((q - one) * k - c * (q - p - one)) / d;
    (a, b)
}

/// Exact fractions `(A, C)` for the min construction at many colors.
pub fn ac_min_fractions(p: usize, q: usize, c: usize) -> (Rational, Rational) {
    let (p, q, c) = (int(p), int(q), int(c));
    let one = int(1);
    let d = int(2) * (c - p + one) * (c - q + one);
    let a = ((c - p + one) * (c - p + one) + (p - one) * (q - p)) / d;
    let g = ((c - q + one) * (c - q + one) - (q - one) * (q - p)) / d;
    (a, g)
}

struct Layout {
    parts: Vec<Part>,
}

impl Layout {
    /// Lays out parts with the given labels, color sets and weights.
    fn new(n: usize, specs: Vec<(String, Vec<usize>, Rational)>) -> Self {
        let weights: Vec<Rational> = specs.iter().map(|s| s.2).collect();
        let sizes = apportion(n, &weights);
        let mut next = 1;
        let parts = specs
            .into_iter()
            .zip(sizes)
            .map(|((label, colors, _), size)| {
                let part = Part { label, first_vertex: next, size, colors };
                next += size;
                part
            })
            .collect();
        Layout { parts }
    }

    /// Vertices of parts whose label starts with `prefix` and, if `color` is
    /// given, whose color set contains it.
    fn vertices(&self, prefix: &str, color: Option<usize>) -> Vec<usize> {
        self.parts
            .iter()
            .filter(|p| p.label.starts_with(prefix) && color.is_none_or(|i| p.colors.contains(&i)))
            .flat_map(Part::vertices)
            .collect()
    }
}

fn subset_label(prefix: &str, s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{prefix}{{{}}}", inner.join(","))
}

/// Parts of one role, split evenly over the colex `k`-subsets.
fn subset_parts(prefix: &str, c: usize, k: usize, weight: Rational) -> Vec<(String, Vec<usize>, Rational)> {
    let subsets = colex_subsets(c, k);
    let each = weight / int(subsets.len());
    subsets.into_iter().map(|s| (subset_label(prefix, &s), s, each)).collect()
}

/// Per-vertex `(assigned colors, removed count)` for the cyclic construction.
fn cyclic_assignment(n: usize, c: usize, q: usize) -> Vec<(Vec<usize>, usize)> {
    let total = n * (q - 1);
    let r = total % c;
    let keep = total - r;
    let mut out = vec![(Vec::new(), 0); n];
    for k in 0..total {
        let v = k / (q - 1);
        if k < keep {
            out[v].0.push(k % c + 1);
        } else {
            out[v].1 += 1;
        }
    }
    out
}

/// Per-color exact counts for the exact families (when the construction fixes them).
fn exact_per_color(family: ConstructionFamily, params: Params) -> Option<Vec<u64>> {
    use ConstructionFamily::*;
    let Params { n, c, p, q } = params;
    let full = (n * (n - 1)) as u64;
    Some(match family {
        CompletePrefix => (1..=c).map(|i| if i < p + q { full } else { 0 }).collect(),
        AssignedOut => {
            let layout = assigned_out_layout(n, c, q);
            (1..=c)
                .map(|i| (layout.vertices("A", Some(i)).len() * (n - 1)) as u64)
                .collect()
        }
        CyclicRemainder => {
            let mut counts = vec![0u64; c];
            for (assigned, removed) in cyclic_assignment(n, c, q) {
                for i in 1..=c {
                    counts[i - 1] += if assigned.contains(&i) { n as u64 - 1 } else { removed as u64 };
                }
            }
            counts
        }
        BOnly => {
            let k = p + q - 1;
            let parts = binom(c, k)?;
            if n % parts != 0 {
                return None;
            }
            let m = (n / parts * binom(c - 1, k - 1)?) as u64;
            vec![m * m.saturating_sub(1); c]
        }
        S11Complete1 => (1..=c).map(|i| if i == 1 { full } else { 0 }).collect(),
        BipartiteS11 => vec![(n * n / 4) as u64; c],
        RemarkCn => vec![(n * (q - 1)) as u64; c],
        RemarkNq => vec![full; c],
        TriangleN3 => vec![3; c],
        AcSplitSum | AbMix | AOnly | AcMin => return None,
    })
}

fn assigned_out_layout(n: usize, c: usize, q: usize) -> Layout {
    let subsets = colex_subsets(c, q - 1);
    let k = subsets.len().min(n);
    let each = Rational::new(1, k as i128);
    Layout::new(n, subsets.into_iter().take(k).map(|s| (subset_label("A", &s), s, each)).collect())
}

/// Predicted value of the construction, for one objective.
pub fn predicted_value(
    family: ConstructionFamily,
    params: Params,
    objective: Objective,
) -> Result<Prediction, ConstructionError> {
    use ConstructionFamily::*;
    check_applicable(family, params)?;
    let Params { n, c, p, q } = params;
    if family == CyclicRemainder && objective == Objective::Min {
        let r = (n * (q - 1)) % c;
        let value = bounds::out_star_min(n as u64, c as u64, q as u64);
        return Ok(if q == 1 || r % (q - 1) == 0 {
            Prediction::Exact(value)
        } else {
            Prediction::Theorem(value)
        });
    }
    if let Some(per_color) = exact_per_color(family, params) {
        return Ok(Prediction::Exact(match objective {
            Objective::Sum => per_color.iter().sum(),
            Objective::Min => per_color.iter().copied().min().unwrap_or(0),
        }));
    }
    let (pr, qr, cr) = (int(p), int(q), int(c));
    let one = int(1);
    let coef = match (family, objective) {
        (BOnly, Objective::Min) => {
            let k = pr + qr - one;
            k * k / (cr * cr)
        }
        (BOnly, Objective::Sum) => {
            let k = pr + qr - one;
            k * k / cr
        }
        (AOnly, Objective::Min) => (qr - one) / cr,
        (AOnly, Objective::Sum) => qr - one,
        (AcSplitSum, Objective::Sum) => bounds::sum_formula(SumRegime::Split, p, q, cr),
        (AcSplitSum, Objective::Min) => {
            let (a, g) = ac_split_fractions(p, q, c);
            a * g
        }
        (AbMix, Objective::Min) => bounds::min_formula(MinRegime::AbMix, p, q, cr),
        (AbMix, Objective::Sum) => {
            let (a, b) = ab_mix_fractions(p, q, c);
            let k = pr + qr - one;
            cr * (a * (qr - one) / cr + b * k / cr) * (a + b * k / cr)
        }
        (AcMin, Objective::Min) => bounds::min_formula(MinRegime::AcMin, p, q, cr),
        (AcMin, Objective::Sum) => {
            let (a, g) = ac_min_fractions(p, q, c);
            cr * (a * (qr - one) / cr + g) * (a + g * (pr - one) / cr)
        }
        _ => unreachable!("exact families handled above"),
    };
    Ok(Prediction::Coefficient(coef))
}

/// Builds the construction after checking applicability.
pub fn build(family: ConstructionFamily, params: Params) -> Result<ConstructionOutput, ConstructionError> {
    use ConstructionFamily::*;
    check_applicable(family, params)?;
    let Params { n, c, p, q } = params;
    let mut coll = DigraphCollection::with_dense_threshold(n, c, BUILD_DENSE_THRESHOLD)?;
    let all: Vec<usize> = (1..=n).collect();
    let whole = |label: &str| vec![(label.to_string(), Vec::new(), int(1))];
    let layout = match family {
        CompletePrefix => {
            for i in 1..=(p + q - 1).min(c) {
                coll.add_all_pairs(i, &all, &all)?;
            }
            Layout::new(n, whole("V"))
        }
        AssignedOut | AOnly => {
            let layout = if family == AssignedOut {
                assigned_out_layout(n, c, q)
            } else {
                Layout::new(n, subset_parts("A", c, q - 1, int(1)))
            };
            for i in 1..=c {
                coll.add_all_pairs(i, &layout.vertices("A", Some(i)), &all)?;
            }
            layout
        }
        CyclicRemainder => {
            let assignment = cyclic_assignment(n, c, q);
            let mut specs = Vec::with_capacity(n);
            for (v0, (assigned, removed)) in assignment.iter().enumerate() {
                let v = v0 + 1;
                let mut colors = assigned.clone();
                colors.sort_unstable();
                specs.push((format!("v{v}"), colors, Rational::new(1, n as i128)));
                for &i in assigned {
                    coll.add_all_pairs(i, &[v], &all)?;
                }
                if *removed > 0 {
                    let targets: Vec<usize> = (1..=n).filter(|&u| u != v).take(*removed).collect();
                    for i in (1..=c).filter(|i| !assigned.contains(i)) {
                        coll.add_all_pairs(i, &[v], &targets)?;
                    }
                }
            }
            Layout::new(n, specs)
        }
        AcSplitSum => {
            let (a, g) = ac_split_fractions(p, q, c);
            let layout = Layout::new(n, vec![("A".into(), Vec::new(), a), ("C".into(), Vec::new(), g)]);
            let av = layout.vertices("A", None);
            let cv = layout.vertices("C", None);
            for i in 1..=c {
                if i < p {
                    coll.add_all_pairs(i, &all, &all)?;
                } else if i < q {
                    coll.add_all_pairs(i, &all, &av)?;
                } else {
                    coll.add_all_pairs(i, &cv, &av)?;
                }
            }
            layout
        }
        BOnly => {
            let layout = Layout::new(n, subset_parts("B", c, p + q - 1, int(1)));
            for i in 1..=c {
                let u = layout.vertices("B", Some(i));
                coll.add_all_pairs(i, &u, &u)?;
            }
            layout
        }
        AbMix => {
            let (a, b) = ab_mix_fractions(p, q, c);
            let mut specs = subset_parts("A", c, q - 1, a);
            specs.extend(subset_parts("B", c, p + q - 1, b));
            let layout = Layout::new(n, specs);
            let av = layout.vertices("A", None);
            for i in 1..=c {
                let bi = layout.vertices("B", Some(i));
                let mut sources = layout.vertices("A", Some(i));
                sources.extend(&bi);
                let mut targets = av.clone();
                targets.extend(&bi);
                coll.add_all_pairs(i, &sources, &targets)?;
            }
            layout
        }
        AcMin => {
            let (a, g) = ac_min_fractions(p, q, c);
            let mut specs = subset_parts("A", c, q - 1, a);
            specs.extend(subset_parts("C", c, p - 1, g));
            let layout = Layout::new(n, specs);
            let av = layout.vertices("A", None);
            let cv = layout.vertices("C", None);
            for i in 1..=c {
                let mut sources = layout.vertices("A", Some(i));
                sources.extend(&cv);
                let mut targets = av.clone();
                targets.extend(layout.vertices("C", Some(i)));
                coll.add_all_pairs(i, &sources, &targets)?;
            }
            layout
        }
        S11Complete1 => {
            coll.add_all_pairs(1, &all, &all)?;
            Layout::new(n, whole("V"))
        }
        BipartiteS11 => {
            let layout = Layout::new(
                n,
                vec![
                    ("L".into(), Vec::new(), Rational::new(1, 2)),
                    ("R".into(), Vec::new(), Rational::new(1, 2)),
                ],
            );
            // apportion gives the larger half to L on odd n; both halves have
            // the same product, so orient from the smaller half for symmetry
            // with the usual picture.
            let mut left = layout.vertices("L", None);
            let mut right = layout.vertices("R", None);
            if left.len() > right.len() {
                std::mem::swap(&mut left, &mut right);
            }
            for i in 1..=c {
                coll.add_all_pairs(i, &left, &right)?;
            }
            layout
        }
        RemarkCn => {
            for v in 1..=n {
                let targets: Vec<usize> = (1..q).map(|d| (v - 1 + d) % n + 1).collect();
                for i in 1..=c {
                    coll.add_all_pairs(i, &[v], &targets)?;
                }
            }
            Layout::new(n, whole("V"))
        }
        RemarkNq => {
            for i in 1..=c {
                coll.add_all_pairs(i, &all, &all)?;
            }
            Layout::new(n, whole("V"))
        }
        TriangleN3 => {
            for (u, v) in [(1, 2), (2, 3), (3, 1)] {
                coll.add_edge(1, u, v)?;
                coll.add_edge(2, v, u)?;
            }
            Layout::new(n, whole("V"))
        }
    };
    Ok(ConstructionOutput {
        family,
        params,
        collection: coll,
        predicted_sum: predicted_value(family, params, Objective::Sum)?,
        predicted_min: predicted_value(family, params, Objective::Min)?,
        parts: layout.parts,
    })
}

/// `value / n^2` as f64.
pub fn normalized(value: u64, n: usize) -> f64 {
    value as f64 / (n as f64 * n as f64)
}

/// `|value / n^2 - coefficient|`.
pub fn coefficient_gap(value: u64, n: usize, coefficient: &Rational) -> f64 {
    (normalized(value, n) - coefficient.to_f64().unwrap_or(f64::NAN)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{classify_vertices, find_rainbow_star, VertexClass};
    use crate::model::StarPattern;

    fn build_ok(family: ConstructionFamily, n: usize, c: usize, p: usize, q: usize) -> ConstructionOutput {
        let out = build(family, Params::new(n, c, p, q)).unwrap();
        let pat = StarPattern::new(p, q).unwrap();
        assert_eq!(find_rainbow_star(&out.collection, pat), None, "{family} n={n} c={c} p={p} q={q}");
        out
    }

    #[test]
    fn catalog_lists_every_family_once() {
        let cat = catalog();
        assert_eq!(cat.len(), 13);
        let ids: Vec<_> = cat.iter().map(|e| e.family).collect();
        assert_eq!(ids, ConstructionFamily::ALL.to_vec());
        for f in ConstructionFamily::ALL {
            assert_eq!(f.id().parse::<ConstructionFamily>(), Ok(f));
        }
    }

    #[test]
    fn colex_and_apportion() {
        assert_eq!(colex_subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(colex_subsets(4, 2)[3], vec![1, 4]);
        assert_eq!(colex_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(apportion(10, &[Rational::new(1, 3); 3]), vec![4, 3, 3]);
        assert_eq!(apportion(7, &[Rational::new(1, 2), Rational::new(1, 2)]), vec![4, 3]);
        assert_eq!(binom(12, 5), Some(792));
        assert_eq!(binom(3, 4), Some(0));
    }

    #[test]
    fn bipartite_example() {
        let out = build_ok(ConstructionFamily::BipartiteS11, 4, 4, 1, 1);
        let s = out.collection.edge_counts();
        assert_eq!(s.per_color, vec![4, 4, 4, 4]);
        assert_eq!(s.min, 4);
    }

    #[test]
    fn cyclic_remainder_example() {
        let out = build_ok(ConstructionFamily::CyclicRemainder, 4, 3, 0, 2);
        assert_eq!(out.collection.edge_counts().per_color, vec![4, 4, 4]);
        assert_eq!(out.predicted_min, Prediction::Exact(4));
        let p = predicted_value(ConstructionFamily::CyclicRemainder, Params::new(5, 3, 0, 2), Objective::Min);
        assert_eq!(p, Ok(Prediction::Exact(6)));
    }

    #[test]
    fn cyclic_remainder_undivisible_case_is_flagged() {
        let out = build_ok(ConstructionFamily::CyclicRemainder, 8, 5, 0, 3);
        assert_eq!(out.predicted_min, Prediction::Theorem(22));
        assert!(out.collection.edge_counts().min < 22);
    }

    #[test]
    fn b_only_example() {
        let out = build_ok(ConstructionFamily::BOnly, 6, 3, 1, 2);
        assert_eq!(out.collection.edge_counts().per_color, vec![12, 12, 12]);
        let colors: Vec<_> = out.parts.iter().map(|p| p.colors.clone()).collect();
        assert_eq!(colors, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert!(out.parts.iter().all(|p| p.size == 2));
        let report = classify_vertices(&out.collection, StarPattern::new(1, 2).unwrap());
        assert_eq!(report.b.len(), 6);
        assert_eq!(out.predicted_min, Prediction::Exact(12));
    }

    #[test]
    fn complete_prefix_example() {
        let out = build_ok(ConstructionFamily::CompletePrefix, 5, 4, 0, 3);
        assert_eq!(out.collection.edge_counts().sum, 40);
        assert_eq!(out.predicted_sum, Prediction::Exact(40));
    }

    #[test]
    fn prediction_examples() {
        let r = |a, b| Prediction::Coefficient(Rational::new(a, b));
        assert_eq!(
            predicted_value(ConstructionFamily::AcMin, Params::new(100, 4, 1, 2), Objective::Min),
            Ok(r(1, 3))
        );
        assert_eq!(
            predicted_value(ConstructionFamily::AcSplitSum, Params::new(100, 8, 1, 2), Objective::Sum),
            Ok(r(16, 7))
        );
    }

    #[test]
    fn part_fractions_sum_to_one() {
        let one = Rational::from_integer(1);
        for p in 1..8 {
            for q in p..10 {
                for c in p + q..30 {
                    let (a, g) = ac_split_fractions(p, q, c);
                    assert_eq!(a + g, one);
                    let (a, b) = ab_mix_fractions(p, q, c);
                    assert_eq!(a + b, one);
                    let (a, g) = ac_min_fractions(p, q, c);
                    assert_eq!(a + g, one);
                }
            }
        }
    }

    #[test]
    fn structural_coefficients_match_formulas() {
        // the min coefficient implied by the part fractions equals the closed form
        for p in 1..5 {
            for q in p..7 {
                for c in p + q..20 {
                    let params = Params::new(10_000, c, p, q);
                    let (pr, qr, cr) = (int(p), int(q), int(c));
                    let one = int(1);
                    if check_applicable(ConstructionFamily::AbMix, Params::new(usize::MAX / 2, c, p, q)).is_ok() {
                        let (a, b) = ab_mix_fractions(p, q, c);
                        let k = pr + qr - one;
                        let per = (a * (qr - one) / cr + b * k / cr) * (a + b * k / cr);
                        assert_eq!(per, bounds::min_formula(MinRegime::AbMix, p, q, cr), "AB p={p} q={q} c={c}");
                    }
                    if c * c >= (p - 1) * (q - 1) && check_applicable(ConstructionFamily::AcMin, params).is_ok() {
                        let (a, g) = ac_min_fractions(p, q, c);
                        let per = (a * (qr - one) / cr + g) * (a + g * (pr - one) / cr);
                        assert_eq!(per, bounds::min_formula(MinRegime::AcMin, p, q, cr), "AC p={p} q={q} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_families_are_free_and_exact() {
        use ConstructionFamily::*;
        let cases = [
            (TriangleN3, 3, 2, 1, 1),
            (S11Complete1, 6, 3, 1, 1),
            (RemarkCn, 5, 7, 0, 3),
            (RemarkNq, 3, 4, 1, 2),
            (AssignedOut, 9, 4, 0, 3),
            (CompletePrefix, 7, 5, 1, 3),
        ];
        for (f, n, c, p, q) in cases {
            let out = build_ok(f, n, c, p, q);
            let s = out.collection.edge_counts();
            assert_eq!(out.predicted_sum, Prediction::Exact(s.sum), "{f}");
            assert_eq!(out.predicted_min, Prediction::Exact(s.min), "{f}");
        }
    }

    #[test]
    fn asymptotic_families_are_free_with_expected_classes() {
        use ConstructionFamily::*;
        for (f, n, c, p, q) in [(AbMix, 40, 4, 1, 3), (AcMin, 40, 6, 2, 3), (AOnly, 30, 5, 1, 3), (AcSplitSum, 30, 9, 1, 2)] {
            let out = build_ok(f, n, c, p, q);
            let report = classify_vertices(&out.collection, StarPattern::new(p, q).unwrap());
            assert!(report.violators.is_empty(), "{f}");
        }
        let out = build_ok(AcMin, 40, 6, 2, 3);
        let pat = StarPattern::new(2, 3).unwrap();
        for prof in crate::detector::color_profiles(&out.collection) {
            assert_ne!(crate::detector::vertex_class(&prof, pat), VertexClass::Violator);
        }
    }

    #[test]
    fn applicability_errors_name_the_inequality() {
        let e = build(ConstructionFamily::CyclicRemainder, Params::new(3, 3, 0, 2)).unwrap_err();
        assert!(e.to_string().contains("n > c"), "{e}");
        let e = build(ConstructionFamily::BOnly, Params::new(2, 3, 1, 2)).unwrap_err();
        assert_eq!(e, ConstructionError::TooManyParts { family: ConstructionFamily::BOnly, parts: 3, n: 2 });
        let e = build(ConstructionFamily::AcMin, Params::new(100, 2, 1, 2)).unwrap_err();
        assert!(e.to_string().contains("c >= p+q"), "{e}");
    }
}
