use crate::error::{rejected, resource, Result};
use crate::f2::BitVec;
use crate::binomial_sum;

/// Default enumeration budget for bias computations.
pub const BIAS_ENUM_CAP: u64 = 100_000_000;

/// Worst linear form found by [`distribution_bias`].
#[derive(Clone, Debug, PartialEq)]
pub struct BiasReport {
    /// max |E[(−1)^ℓ(z)]| over the enumerated forms.
    pub bias: f64,
    /// Support of a maximizing form (first in size-then-lexicographic order).
    pub form: Vec<usize>,
}

/// Transposes a point list into per-variable indicator vectors over the points.
pub(crate) fn variable_columns(points: &[BitVec]) -> Result<Vec<BitVec>> {
    let n = points.first().map_or(0, BitVec::len);
    if points.iter().any(|p| p.len() != n) {
        return Err(rejected("points have different lengths"));
    }
    let mut cols = vec![BitVec::zeros(points.len()); n];
    for (i, p) in points.iter().enumerate() {
        for j in p.iter_ones() {
            cols[j].set(i, true);
        }
    }
    Ok(cols)
}

/// Largest bias of a nonzero linear form on at most `support_cap` variables
/// under the uniform distribution on `points`.
pub fn distribution_bias(points: &[BitVec], support_cap: usize, enum_cap: u64) -> Result<BiasReport> {
    if points.is_empty() {
        return Err(rejected("bias of an empty point set is undefined"));
    }
    let n = points[0].len();
    let s = support_cap.min(n);
    let work = binomial_sum(n, s).saturating_mul(1u64 << s.min(62));
    if work > enum_cap {
        return Err(resource(format!(
            "{work} form evaluations exceed the enumeration cap {enum_cap}"
        )));
    }
    let cols = variable_columns(points)?;
    let m = points.len();
    // Ties keep the earliest form, so a perfectly balanced set reports {0}.
    let mut best = (0usize, if s > 0 { vec![0] } else { Vec::new() });
    for size in 1..=s {
        let mut stack = vec![BitVec::zeros(m)];
        let mut chosen = Vec::with_capacity(size);
        search(&cols, size, 0, &mut chosen, &mut stack, &mut best, m);
    }
    Ok(BiasReport {
        bias: best.0 as f64 / m as f64,
        form: best.1,
    })
}

fn search(
    cols: &[BitVec],
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    stack: &mut Vec<BitVec>,
    best: &mut (usize, Vec<usize>),
    m: usize,
) {
    if chosen.len() == size {
        let ones = stack.last().expect("stack holds the prefix sum").weight();
        let dev = m.abs_diff(2 * ones);
        if dev > best.0 {
            *best = (dev, chosen.clone());
        }
        return;
    }
    for j in from..cols.len() {
        let mut next = stack.last().expect("nonempty").clone();
        next.xor_assign(&cols[j]);
        stack.push(next);
        chosen.push(j);
        search(cols, size, j + 1, chosen, stack, best, m);
        chosen.pop();
        stack.pop();
    }
}
