use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::LabeledDigraph;
use crate::label::Label;

/// `(q+1)^r * q^(k-r)` for `total = k*q + r`, together with the balanced
/// tuple `(q+1, ..., q+1, q, ..., q)` that attains it. The tuple sums to
/// `total` and its product is the returned value; this is the maximal
/// product of `k` nonnegative integers with that sum.
pub fn path_bound_int(total: u64, k: u32) -> (Label, Vec<u64>) {
    assert!(k >= 1, "path bound needs k >= 1");
    let q = total / k as u64;
    let r = (total % k as u64) as u32;
    let value = BigInt::from(q + 1).pow(r) * BigInt::from(q).pow(k - r);
    let mut tuple = alloc::vec![q + 1; r as usize];
    tuple.extend(core::iter::repeat_n(q, (k - r) as usize));
    (
        Label::new(BigRational::from_integer(value)).expect("nonnegative"),
        tuple,
    )
}

/// `(total / k)^k`, the real-relaxation path bound, attained by the path
/// whose `k` labels all equal `total / k`.
pub fn path_bound_real(total: &Label, k: u32) -> Label {
    assert!(k >= 1, "path bound needs k >= 1");
    total.div_int(k as u64).pow(k)
}

/// Repeatedly replaces a maximal/minimal pair with gap at least 2 by
/// `(max-1, min+1)` until all entries differ by at most 1. The sum is
/// preserved and the product never decreases, since `a*b < (a-1)*(b+1)`
/// whenever `a - b >= 2`. The result is a permutation of the balanced tuple
/// of [`path_bound_int`].
pub fn balanced_exchange(tuple: &[u64]) -> Vec<u64> {
    let mut out = tuple.to_vec();
    if out.is_empty() {
        return out;
    }
    loop {
        let hi = (0..out.len())
            .max_by_key(|&i| (out[i], core::cmp::Reverse(i)))
            .unwrap();
        let lo = (0..out.len()).min_by_key(|&i| (out[i], i)).unwrap();
        if out[hi] - out[lo] < 2 {
            return out;
        }
        out[hi] -= 1;
        out[lo] += 1;
    }
}

/// The exact `order`-th elementary symmetric sum of `values`; zero when
/// `order` exceeds the number of values.
pub fn elementary_symmetric(order: usize, values: &[Label]) -> Label {
    assert!(order >= 1, "elementary symmetric sum needs order >= 1");
    // Standard one-pass recurrence: after absorbing x, e_j += x * e_{j-1}.
    let mut e = alloc::vec![Label::zero(); order + 1];
    e[0] = Label::one();
    for x in values {
        for j in (1..=order).rev() {
            let add = x * &e[j - 1];
            e[j] += &add;
        }
    }
    e.pop().expect("order + 1 entries")
}

/// `C(total, arms)`: the maximal number of `arms`-arm stars in a digraph
/// with `total` edges, attained by the star with `total` unit-label arms.
pub fn star_bound_int(total: u64, arms: u32) -> Label {
    assert!(arms >= 1, "star bound needs arms >= 1");
    let value = binomial(BigInt::from(total), BigInt::from(arms));
    Label::new(BigRational::from_integer(value)).expect("nonnegative")
}

/// `total^arms / arms!`, the supremum of the star content sum over all
/// real-labeled digraphs of the given weight. The supremum is approached,
/// not attained: equal-label stars converge to it as the arm count grows.
pub fn star_supremum(total: &Label, arms: u32) -> Label {
    assert!(arms >= 1, "star supremum needs arms >= 1");
    let factorial: BigInt = (1..=arms as u64).map(BigInt::from).product();
    Label::new(total.pow(arms).ratio() / factorial).expect("nonnegative")
}

/// `C(t, arms) * (total / t)^arms`: the best star content sum with exactly
/// `t` equal arms. Non-decreasing in `t` and below the supremum for every
/// finite `t`. Requires `t >= arms`.
pub fn star_value_at(total: &Label, arms: u32, t: u64) -> Result<Label> {
    assert!(arms >= 1, "star value needs arms >= 1");
    if t < arms as u64 {
        return Err(Error::StarPointTooSmall { t, arms });
    }
    let choose = binomial(BigInt::from(t), BigInt::from(arms));
    let per_arm = total.div_int(t).pow(arms);
    Label::new(per_arm.ratio() * choose)
}

/// Which closed form a [`BoundReport`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    PathInt,
    PathReal,
    StarInt,
    StarReal,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::PathInt => "path-int",
            BoundKind::PathReal => "path-real",
            BoundKind::StarInt => "star-int",
            BoundKind::StarReal => "star-real",
        }
    }
}

/// A computed extremal value paired with its attaining configuration.
///
/// When `witness` is present, evaluating the pattern content sum on it
/// reproduces `value` (or `finite_value` for the star supremum, which is
/// itself not attained) exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub total: Label,
    pub param: u32,
    pub t: Option<u64>,
    pub value: Label,
    /// Balanced integer tuple, for the integer path bound.
    pub tuple: Option<Vec<u64>>,
    /// `C(t, a) (N/t)^a`, for the star supremum at a finite `t`.
    pub finite_value: Option<Label>,
    pub attained: bool,
    pub witness: Option<LabeledDigraph>,
    pub witness_note: String,
}

fn labeled_path(labels: &[Label]) -> LabeledDigraph {
    let mut g = LabeledDigraph::new();
    for v in 0..=labels.len() {
        g.add_vertex(&v.to_string());
    }
    for (i, label) in labels.iter().enumerate() {
        g.add_edge(&i.to_string(), &(i + 1).to_string(), label.clone())
            .expect("path edges are distinct");
    }
    g
}

fn labeled_star(arm_labels: &[Label]) -> LabeledDigraph {
    let mut g = LabeledDigraph::new();
    g.add_vertex("c");
    for (i, label) in arm_labels.iter().enumerate() {
        g.add_edge(&format!("s{i}"), "c", label.clone())
            .expect("star arms are distinct");
    }
    g
}

/// Requires an integer-valued label and returns it as `u64`.
fn integer_total(total: &Label) -> Result<u64> {
    if !total.is_integer() {
        return Err(Error::NotAnInteger(total.to_string()));
    }
    total
        .ratio()
        .numer()
        .to_u64()
        .ok_or_else(|| Error::NotAnInteger(total.to_string()))
}

/// Evaluates one of the closed forms and packages value, optimizing tuple
/// and witness graph. `param` is `k` for path kinds and the arm count for
/// star kinds; `t` is only meaningful for [`BoundKind::StarReal`].
pub fn bound_report(
    kind: BoundKind,
    total: &Label,
    param: u32,
    t: Option<u64>,
) -> Result<BoundReport> {
    let mut report = BoundReport {
        kind,
        total: total.clone(),
        param,
        t: None,
        value: Label::zero(),
        tuple: None,
        finite_value: None,
        attained: true,
        witness: None,
        witness_note: String::new(),
    };
    match kind {
        BoundKind::PathInt => {
            let n = integer_total(total)?;
            let (value, tuple) = path_bound_int(n, param);
            let labels: Vec<Label> = tuple.iter().map(|&x| Label::from_int(x)).collect();
            report.value = value;
            report.witness = Some(labeled_path(&labels));
            report.witness_note = format!("length-{param} path carrying the balanced tuple");
            report.tuple = Some(tuple);
        }
        BoundKind::PathReal => {
            report.value = path_bound_real(total, param);
            let per_edge = total.div_int(param as u64);
            report.witness_note = format!("length-{param} path with every label {per_edge}");
            report.witness = Some(labeled_path(&alloc::vec![per_edge; param as usize]));
        }
        BoundKind::StarInt => {
            let n = integer_total(total)?;
            report.value = star_bound_int(n, param);
            report.witness = Some(labeled_star(&alloc::vec![Label::one(); n as usize]));
            report.witness_note = format!("{n}-arm star with every label 1");
        }
        BoundKind::StarReal => {
            report.value = star_supremum(total, param);
            report.attained = false;
            report.witness_note =
                "supremum, not attained; equal-label stars approach it as the arm count grows"
                    .to_string();
            if let Some(t) = t {
                report.t = Some(t);
                report.finite_value = Some(star_value_at(total, param, t)?);
                let per_arm = total.div_int(t);
                report.witness = Some(labeled_star(&alloc::vec![per_arm; t as usize]));
                report.witness_note = format!(
                    "supremum not attained; witness is the {t}-arm star attaining the value at t"
                );
            }
        }
    }
    Ok(report)
}
