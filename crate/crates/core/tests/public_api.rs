use curve_depth::io::{parse_curve_set, serialize_curve_set};
use curve_depth::{curve_depth, point_depth, ExactOptions, Point32, Point64, Polyline32, Polyline64};
use proptest::prelude::*;

fn plates64() -> Vec<Polyline64> {
    vec![
        Polyline64::from_xy(&[(-1., 1.), (1., 1.)]),
        Polyline64::from_xy(&[(-1., -1.), (1., -1.)]),
    ]
}

#[test]
fn f32_and_f64_agree_on_plates() {
    let q64 = Polyline64::from_xy(&[(-1., 0.), (1., 0.)]);
    let c64 = plates64();
    let q32: Polyline32 = q64.cast();
    let c32: Vec<Polyline32> = c64.iter().map(|p| p.cast()).collect();
    let opts = ExactOptions::default();
    let d64 = curve_depth(&q64, &c64, &opts).unwrap();
    let d32 = curve_depth(&q32, &c32, &opts).unwrap();
    assert!(
        (d64.depth - d32.depth as f64).abs() < 1e-5,
        "{} vs {}",
        d64.depth,
        d32.depth
    );
    assert_eq!(point_depth(Point64::new(0.0, 0.0), &c64, true), 0.25);
    assert!((point_depth(Point32::new(0.0, 0.0), &c32, true) - 0.25).abs() < 1e-6);
}

fn curve_set() -> impl Strategy<Value = Vec<Vec<(f64, f64)>>> {
    prop::collection::vec(prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 1..6), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn curve_sets_round_trip(sets in curve_set()) {
        let curves: Vec<Polyline64> = sets
            .iter()
            .map(|pts| Polyline64::collapsing(pts.iter().map(|&(x, y)| Point64::new(x, y)).collect()).unwrap().0)
            .collect();
        let ids: Vec<String> = (0..curves.len()).map(|i| format!("c{i}")).collect();
        let text = serialize_curve_set(&ids, &curves);
        let back = parse_curve_set(text.as_bytes()).unwrap();
        prop_assert_eq!(&back.ids, &ids);
        prop_assert_eq!(&back.curves, &curves);
        prop_assert!(back.warnings.is_empty());
    }
}
