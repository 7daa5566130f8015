mod common;

use common::Pt;
use mixval::dissection::{fine_mixed_dissection, stored_certificates, Certificate, DissectionJson, HalfOpenRule};
use mixval::lattice::lattice_count;
use mixval::positivity::{max_common_independent, LinearMatroid, PartitionMatroid};
use mixval::rational::{frac, int};
use mixval::valuation::{cm, DiscreteVolume, Volume};
use mixval::{Point, Polytope};
use proptest::prelude::*;

fn poly(pts: &[Pt]) -> Polytope {
    Polytope::hull(&pts.iter().map(|p| Point::from_ints(p)).collect::<Vec<_>>()).unwrap()
}

fn points(d: usize, max: i64, n: usize) -> impl Strategy<Value = Vec<Pt>> {
    prop::collection::vec(prop::collection::vec(0..=max, d), 1..=n)
}

fn tuple(d: usize, r: usize) -> impl Strategy<Value = Vec<Vec<Pt>>> {
    prop::collection::vec(points(d, 2, 4), r)
}

#[test]
fn oracle_hand_values() {
    let square = common::hull(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 0]]);
    assert_eq!((square.count(), square.volume(), square.vertices.len()), (4, int(1), 4));
    let trapezoid = common::hull(&[vec![0, 0], vec![2, 0], vec![1, 1], vec![0, 1]]);
    assert_eq!(trapezoid.volume(), frac(3, 2));
    let cube = common::hull(&(0..8).map(|m| (0..3).map(|i| 2 * (m >> i & 1)).collect()).collect::<Vec<_>>());
    assert_eq!((cube.count(), cube.volume(), cube.relint_count(), cube.ineqs.len()), (27, int(8), 1, 6));
    let tri = common::hull(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
    assert_eq!((tri.dim, tri.count(), tri.volume(), tri.edges().len()), (2, 4, int(0), 4));
    let seg = common::hull(&[vec![1, 1], vec![3, 3], vec![2, 2]]);
    assert_eq!((seg.dim, seg.vertices.len(), seg.count(), seg.relint_count()), (1, 2, 3, 1));
    assert_eq!(common::box_subpolytopes(1, 2).len(), 6);
    assert_eq!(common::compositions(3, 2), 2);
    assert_eq!(common::brute_max_common(&[vec![1, 0], vec![2, 0], vec![0, 1]], &[0, 1, 1]), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_and_volumes_match(d in 1usize..=3, pts in prop::collection::vec(prop::collection::vec(0i64..=4, 3), 1..=6)) {
        let pts: Vec<Pt> = pts.into_iter().map(|p| p[..d].to_vec()).collect();
        let (lib, oracle) = (poly(&pts), common::hull(&pts));
        prop_assert_eq!(lib.dim(), oracle.dim);
        prop_assert_eq!(lattice_count(&lib), oracle.count());
        prop_assert_eq!(lib.volume(), oracle.volume());
        let verts: Vec<Pt> = lib.vertices().iter().map(common::ints).collect();
        prop_assert_eq!(verts, oracle.vertices);
    }

    #[test]
    fn minkowski_sums_match(a in points(3, 2, 5), b in points(3, 2, 5)) {
        let sum = poly(&a).minkowski_sum(&poly(&b)).unwrap();
        let oracle = common::hull(&a).plus(&common::hull(&b));
        let verts: Vec<Pt> = sum.vertices().iter().map(common::ints).collect();
        prop_assert_eq!(verts, oracle.vertices);
    }

    #[test]
    fn mixed_count_symmetric_and_translation_invariant(polys in tuple(2, 2), t in prop::collection::vec(-3i64..=3, 2)) {
        let lib: Vec<Polytope> = polys.iter().map(|p| poly(p)).collect();
        let v = cm(&DiscreteVolume, &lib).unwrap();
        let swapped = vec![lib[1].clone(), lib[0].clone()];
        prop_assert_eq!(&cm(&DiscreteVolume, &swapped).unwrap(), &v);
        let moved = vec![lib[0].translate(&Point::from_ints(&t)), lib[1].clone()];
        prop_assert_eq!(&cm(&DiscreteVolume, &moved).unwrap(), &v);
        let hulls: Vec<_> = polys.iter().map(|p| common::hull(p)).collect();
        prop_assert_eq!(&common::cm("dvol", 2, &hulls, None), &v);
        prop_assert_eq!(cm(&Volume, &lib).unwrap(), common::scaled_mixed_volume(&hulls));
    }

    #[test]
    fn matroid_intersection_is_maximum(
        dirs in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=9),
        owners in prop::collection::vec(0usize..3, 9),
    ) {
        let owners = &owners[..dirs.len()];
        let m1 = LinearMatroid { vectors: dirs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect() };
        let m2 = PartitionMatroid { blocks: owners.to_vec() };
        prop_assert_eq!(max_common_independent(&m1, &m2).len(), common::brute_max_common(&dirs, owners));
    }

    #[test]
    fn dissection_json_round_trip(polys in tuple(2, 2), seed in 0u64..1000) {
        let lib: Vec<Polytope> = polys.iter().map(|p| poly(p)).collect();
        let mut d = fine_mixed_dissection(&lib).unwrap();
        let q = d.generic_point(seed).unwrap();
        d.make_half_open(&HalfOpenRule::Point(q)).unwrap();
        let text = serde_json::to_string(&DissectionJson::from(&d)).unwrap();
        let back = serde_json::from_str::<DissectionJson>(&text).unwrap().to_dissection().unwrap();
        prop_assert_eq!(&back, &d);
        let certs = stored_certificates(&back);
        prop_assert!(certs.iter().all(Certificate::holds), "{:?}", certs);
        prop_assert_eq!(&certs[0].actual, &common::sum_all(2, &polys.iter().map(|p| common::hull(p)).collect::<Vec<_>>().iter().collect::<Vec<_>>()).count().to_string());
    }
}
