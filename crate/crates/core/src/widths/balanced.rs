//! Lower bound from balanced cuts.
//!
//! Every decomposition tree on `n >= 3` leaves has an edge whose smaller side
//! holds between `n/3` and `n/2` vertices, so the minimum of `f` over such
//! cuts bounds the `f`-width from below. Sizes are taken in the integral range
//! `ceil(n/3) ..= floor(n/2)`.

use rayon::prelude::*;

use super::{check_cut_function, CutFunction, WidthError};
use crate::graphs::{Cut, Graph};

/// Default vertex cap: `2^22` subsets.
pub const DEFAULT_BALANCED_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq)]
pub struct BalancedBound {
    pub value: f64,
    pub cut: Cut,
}

/// Allowed sizes of the smaller side.
pub fn balanced_range(n: usize) -> std::ops::RangeInclusive<usize> {
    n.div_ceil(3)..=n / 2
}

/// Minimum of `f` over all balanced cuts; ties go to the smallest vertex mask.
///
/// Enumeration is split across the current rayon pool; the reduction orders
/// candidates by `(value, mask)` so the result does not depend on scheduling.
pub fn balanced_cut_lower_bound(graph: &Graph, f: &dyn CutFunction, n_cap: usize) -> Result<BalancedBound, WidthError> {
    let n = graph.n();
    let cap = n_cap.min(63);
    if n > cap {
        return Err(WidthError::TooLarge { n, cap });
    }
    if n < 3 {
        return Err(WidthError::TooSmall { n });
    }
    check_cut_function(graph, f)?;
    let sizes = balanced_range(n);
    let (value, mask) = (0u64..1 << n)
        .into_par_iter()
        .filter(|m| sizes.contains(&(m.count_ones() as usize)))
        .map(|m| f.evaluate(graph, &Cut::from_mask(n, m)).map(|v| (v, m)))
        .try_reduce_with(|a, b| {
            Ok(if b.0.total_cmp(&a.0).then(b.1.cmp(&a.1)).is_lt() {
                b
            } else {
                a
            })
        })
        .expect("balanced range is nonempty for n >= 3")?;
    Ok(BalancedBound {
        value,
        cut: Cut::from_mask(n, mask),
    })
}
