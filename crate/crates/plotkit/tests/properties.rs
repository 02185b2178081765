use plotkit::stats::{box_stats, histogram};
use plotkit::ticks::nice_ticks;
use proptest::prelude::*;

proptest! {
    #[test]
    fn histogram_conserves_count(data in prop::collection::vec(-1e6f64..1e6, 1..200), bins in 1usize..60) {
        let (counts, edges) = histogram(&data, bins, None);
        prop_assert_eq!(counts.len(), bins);
        prop_assert_eq!(edges.len(), bins + 1);
        prop_assert_eq!(counts.iter().sum::<f64>() as usize, data.len());
        prop_assert!(edges.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn box_stats_are_ordered(data in prop::collection::vec(-1e3f64..1e3, 1..100)) {
        let b = box_stats(&data).unwrap();
        prop_assert!(b.whisker_lo <= b.q1);
        prop_assert!(b.q1 <= b.median && b.median <= b.q3);
        prop_assert!(b.q3 <= b.whisker_hi);
        for f in &b.fliers {
            prop_assert!(*f < b.whisker_lo || *f > b.whisker_hi);
        }
    }

    #[test]
    fn ticks_are_increasing_and_inside(lo in -1e6f64..1e6, span in 1e-3f64..1e6) {
        let hi = lo + span;
        let t = nice_ticks(lo, hi);
        prop_assert!(!t.is_empty());
        prop_assert!(t.len() <= 12);
        prop_assert!(t.windows(2).all(|w| w[0] < w[1]));
        let tol = span * 1e-6;
        prop_assert!(t.iter().all(|&v| v >= lo - tol && v <= hi + tol));
    }
}
