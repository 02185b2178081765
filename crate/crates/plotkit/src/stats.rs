//! Summary statistics computed by plotting functions before drawing.

/// Linear-interpolated percentile of sorted data, `p` in [0, 100].
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Box-and-whisker statistics with whiskers at 1.5 IQR.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub whisker_lo: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_hi: f64,
    pub fliers: Vec<f64>,
}

pub fn box_stats(data: &[f64]) -> Option<BoxStats> {
    let mut sorted: Vec<f64> = data.iter().copied().filter(|v| v.is_finite()).collect();
    if sorted.is_empty() {
        return None;
    }
    sorted.sort_by(|a, b| a.total_cmp(b));
    let q1 = percentile(&sorted, 25.0);
    let median = percentile(&sorted, 50.0);
    let q3 = percentile(&sorted, 75.0);
    let iqr = q3 - q1;
    let lo_fence = q1 - 1.5 * iqr;
    let hi_fence = q3 + 1.5 * iqr;
    // whiskers reach the most extreme datum inside the fences, never inside the box
    let whisker_lo = sorted
        .iter()
        .copied()
        .find(|&v| v >= lo_fence)
        .unwrap_or(q1)
        .min(q1);
    let whisker_hi = sorted
        .iter()
        .rev()
        .copied()
        .find(|&v| v <= hi_fence)
        .unwrap_or(q3)
        .max(q3);
    let fliers = sorted
        .iter()
        .copied()
        .filter(|&v| v < whisker_lo || v > whisker_hi)
        .collect();
    Some(BoxStats {
        whisker_lo,
        q1,
        median,
        q3,
        whisker_hi,
        fliers,
    })
}

/// Equal-width histogram over the data range; the last bin is closed.
pub fn histogram(data: &[f64], bins: usize, range: Option<(f64, f64)>) -> (Vec<f64>, Vec<f64>) {
    let finite: Vec<f64> = data.iter().copied().filter(|v| v.is_finite()).collect();
    let (mut lo, mut hi) = range.unwrap_or_else(|| {
        finite
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
    });
    if lo > hi {
        lo = 0.0;
        hi = 1.0;
    }
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    let mut counts = vec![0.0; bins];
    for v in finite {
        if v < lo || v > hi {
            continue;
        }
        let i = (((v - lo) / width) as usize).min(bins - 1);
        counts[i] += 1.0;
    }
    (counts, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile_interpolates() {
        let s = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&s, 50.0), 2.5);
        assert_eq!(percentile(&s, 25.0), 1.75);
        assert_eq!(percentile(&s, 100.0), 4.0);
    }

    #[test]
    fn outliers_fall_outside_whiskers() {
        let mut data: Vec<f64> = (1..=20).map(f64::from).collect();
        data.push(100.0);
        let b = box_stats(&data).unwrap();
        assert_eq!(b.fliers, vec![100.0]);
        assert_eq!(b.whisker_hi, 20.0);
        assert_eq!(b.whisker_lo, 1.0);
        assert!(b.whisker_lo <= b.q1 && b.q1 <= b.median && b.median <= b.q3 && b.q3 <= b.whisker_hi);
    }

    #[test]
    fn empty_box_is_none() {
        assert!(box_stats(&[]).is_none());
        assert!(box_stats(&[f64::NAN]).is_none());
    }

    #[test]
    fn histogram_counts_every_value() {
        let data = [0.0, 0.5, 1.0, 1.5, 2.0];
        let (counts, edges) = histogram(&data, 4, None);
        assert_eq!(edges, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(counts, vec![1.0, 1.0, 1.0, 2.0]);
    }
}
