use firewatch_core::analytic::AnalyticLaw;
use firewatch_core::geometry::RectRegion;
use firewatch_core::montecarlo::{ks_critical_value, ks_distance};
use firewatch_core::placement::{characteristic_distance, grid_layout, uniform_layout};
use proptest::prelude::*;

fn uniform_law(upper: f64) -> AnalyticLaw {
    AnalyticLaw::new("uniform", move |x| (1.0 - x / upper).clamp(0.0, 1.0))
        .with_support_upper(upper)
}

#[test]
fn uniform_marginals_pass_ks_at_one_percent() {
    let region = RectRegion::new(30.0, 12.0).unwrap();
    let crit = ks_critical_value(1000, 0.01);
    for seed in [1u64, 2, 3] {
        let layout = uniform_layout(&region, 1000, seed).unwrap();
        let mut xs: Vec<f64> = layout.positions().iter().map(|p| p.x).collect();
        let mut ys: Vec<f64> = layout.positions().iter().map(|p| p.y).collect();
        xs.sort_by(f64::total_cmp);
        ys.sort_by(f64::total_cmp);
        let dx = ks_distance(&xs, &uniform_law(30.0)).unwrap();
        let dy = ks_distance(&ys, &uniform_law(12.0)).unwrap();
        assert!(dx < crit, "seed {seed}: x KS {dx} >= {crit}");
        assert!(dy < crit, "seed {seed}: y KS {dy} >= {crit}");
    }
}

#[test]
fn same_seed_same_layout() {
    let region = RectRegion::new(5.0, 5.0).unwrap();
    assert_eq!(
        uniform_layout(&region, 100, 42).unwrap(),
        uniform_layout(&region, 100, 42).unwrap()
    );
    assert_ne!(
        uniform_layout(&region, 100, 42).unwrap(),
        uniform_layout(&region, 100, 43).unwrap()
    );
}

proptest! {
    #[test]
    fn uniform_points_stay_inside(w in 0.1f64..100.0, h in 0.1f64..100.0, n in 1usize..300, seed: u64) {
        let region = RectRegion::new(w, h).unwrap();
        let layout = uniform_layout(&region, n, seed).unwrap();
        prop_assert_eq!(layout.len(), n);
        prop_assert!(layout.positions().iter().all(|p| region.contains(p)));
    }

    #[test]
    fn grid_node_count(nx in 1usize..40, ny in 1usize..40, spacing in 0.05f64..20.0) {
        let region = RectRegion::new(nx as f64 * spacing, ny as f64 * spacing).unwrap();
        let layout = grid_layout(&region, spacing).unwrap();
        prop_assert_eq!(layout.len(), (nx + 1) * (ny + 1));
        prop_assert!(layout.positions().iter().all(|p| region.contains(p)));
    }

    #[test]
    fn distance_squared_times_n_is_area(area in 1e-3f64..1e9, n in 1usize..1_000_000) {
        let d = characteristic_distance(area, n).unwrap();
        prop_assert!((d * d * n as f64 - area).abs() <= 4.0 * f64::EPSILON * area);
    }
}
