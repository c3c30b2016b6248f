use crate::error::{Error, Result};

/// Neumaier-compensated summation. Deterministic for a fixed iteration
/// order and keeps enumeration sums accurate for large term counts.
pub(crate) fn comp_sum<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut sum = 0.0_f64;
    let mut compensation = 0.0_f64;
    for term in terms {
        let next = sum + term;
        if sum.abs() >= term.abs() {
            compensation += (sum - next) + term;
        } else {
            compensation += (term - next) + sum;
        }
        sum = next;
    }
    sum + compensation
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comp_sum_recovers_cancellation() {
        // 1 + tiny - 1 loses the tiny term under naive summation
        let tiny = 1e-17;
        assert_eq!(comp_sum([1.0, tiny, -1.0]), tiny);
    }

    #[test]
    fn comp_sum_empty_is_zero() {
        assert_eq!(comp_sum([]), 0.0);
    }

    #[test]
    fn dims_mismatch_reports_both_sides() {
        assert_eq!(
            check_dims(2, 3),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(check_dims(4, 4).is_ok());
    }
}
