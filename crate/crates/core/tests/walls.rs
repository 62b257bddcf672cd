use ellstab_core::lattice::ChernClass;
use ellstab_core::patching::PatchConstants;
use ellstab_core::series::{int, rat};
use ellstab_core::walls::{candidate_classes, find_walls, weight_at, StabilityFamily, WallFamily};

fn family(kind: WallFamily) -> StabilityFamily {
    let c = PatchConstants::new(int(2), int(1), int(0)).unwrap();
    StabilityFamily::from_q(kind, c, &int(0)).unwrap()
}

/// Each reported wall is a root of S to the bisection width, with strict
/// opposite signs just either side of it.
fn check_roots(kind: WallFamily, interval: (f64, f64)) -> usize {
    let target = ChernClass::from_ints(1, 0, 2, 0, -4);
    let fam = family(kind);
    let cands = candidate_classes(&target, &fam, 3, &rat(1, 2)).unwrap();
    let walls = find_walls(&target, &fam, &cands, interval, 4000).unwrap();
    for w in &walls {
        let s = |p: f64| weight_at(&fam, &w.destabilizer, &target, p).unwrap();
        let d = 1e-4 * w.param;
        let (lo, hi) = (s(w.param - d), s(w.param + d));
        assert!(lo * hi < 0.0, "no sign change at {} for {}", w.param, w.destabilizer);
        let slope = (hi - lo).abs() / (2.0 * d);
        assert!(s(w.param).abs() <= 10.0 * slope * 1e-10 * w.param, "S = {} at {}", s(w.param), w.param);
    }
    walls.len()
}

#[test]
fn ray_walls_are_roots() {
    assert_eq!(check_roots(WallFamily::Ray, (0.05, 20.0)), 2);
}

#[test]
fn hyperbola_walls_are_roots() {
    assert!(check_roots(WallFamily::Hyperbola, (0.5, 40.0)) >= 1);
}

#[test]
fn walls_sorted_and_distinct() {
    let target = ChernClass::from_ints(1, 0, 2, 0, -4);
    let fam = family(WallFamily::Ray);
    let cands = candidate_classes(&target, &fam, 4, &rat(1, 2)).unwrap();
    let walls = find_walls(&target, &fam, &cands, (0.01, 100.0), 10).unwrap();
    for pair in walls.windows(2) {
        assert!(pair[0].param <= pair[1].param);
        assert!(pair[0].destabilizer != pair[1].destabilizer || pair[0].param != pair[1].param);
    }
    // complementary destabilizers give one wall, not two
    for w in &walls {
        let rest = target.checked_sub(&w.destabilizer).unwrap();
        assert!(!walls.iter().any(|o| o.destabilizer == rest && o.param == w.param && rest != w.destabilizer));
    }
}
