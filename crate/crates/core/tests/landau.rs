use nalgebra::DMatrix;

use oneloop::kinematics::{momenta_from_invariants, Invariants};
use oneloop::landau::{bubble_roots, channel_root_search, landau_scan, triangle_quadratic, RootSearch};
use oneloop::{KinematicConfig, C64};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn triangle(s: f64, t: f64, u: f64, masses: [f64; 3]) -> KinematicConfig {
    let inv = Invariants::from_mandelstam(3, [("s", c(s)), ("t", c(t)), ("u", c(u))]).unwrap();
    KinematicConfig::new(3, masses.to_vec(), momenta_from_invariants(3, 3, &inv).unwrap()).unwrap()
}

#[test]
fn triangle_scan_finds_quadratic_roots() {
    let masses = [1.0, 1.2, 0.7];
    let mut total = 0;
    for (t, u) in [(1.0, 2.0), (-3.0, 5.0), (0.5, -1.5)] {
        let q = triangle_quadratic(c(t), c(u), masses);
        let mut want: Vec<f64> = q.roots.iter().filter(|r| r.im.abs() < 1e-12).map(|r| r.re).collect();
        want.retain(|r| r.abs() < 40.0);
        want.sort_by(f64::total_cmp);
        let cfg = triangle(3.0, t, u, masses);
        let found = channel_root_search(
            &cfg,
            "s",
            (-40.0, 40.0),
            &RootSearch {
                steps: 4000,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(found.len(), want.len(), "t={t} u={u}: {found:?} vs {want:?}");
        total += found.len();
        for (a, b) in found.iter().zip(&want) {
            assert!((a - b).abs() < 1e-8 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }
    assert!(total >= 3, "{total}");
}

#[test]
fn triangle_scan_lists_bubbles() {
    let masses = [1.0, 1.5, 0.5];
    let cfg = triangle(3.0, 1.0, 2.0, masses);
    let scan = landau_scan(&cfg, 1e-9).unwrap();
    assert_eq!(scan.entries.len(), 4);
    // the {1,2} bubble sees -p1^2 = s
    let roots = channel_root_search(
        &cfg,
        "s",
        (0.01, 10.0),
        &RootSearch {
            subset: Some(vec![1, 2]),
            ..Default::default()
        },
    )
    .unwrap();
    let (th, pseudo) = bubble_roots(1.0, 1.5);
    assert_eq!(roots.len(), 2);
    assert!((roots[0] - pseudo).abs() < 1e-10 && (roots[1] - th).abs() < 1e-10);
}

#[test]
fn landau_scan_is_frame_invariant() {
    let cfg = KinematicConfig::new(
        4,
        vec![1.0, 1.1, 0.9, 1.3],
        vec![
            vec![C64::new(0.3, 0.1), c(0.2), C64::new(-0.5, 0.4), c(0.1)],
            vec![c(-0.4), C64::new(0.6, -0.2), c(0.3), C64::new(0.2, 0.2)],
            vec![C64::new(0.1, 0.7), c(-0.3), c(0.5), c(0.4)],
        ],
    )
    .unwrap();
    let th = C64::new(0.7, 0.3);
    let mut m = DMatrix::<C64>::identity(4, 4);
    m[(1, 1)] = th.cos();
    m[(3, 3)] = th.cos();
    m[(1, 3)] = -th.sin();
    m[(3, 1)] = th.sin();
    let a = landau_scan(&cfg, 1e-9).unwrap();
    let b = landau_scan(&cfg.transformed(&m).unwrap(), 1e-9).unwrap();
    assert_eq!(a.entries.len(), 11);
    for (x, y) in a.entries.iter().zip(&b.entries) {
        assert_eq!(x.subset, y.subset);
        assert!((x.r_squared - y.r_squared).norm() < 1e-8 * x.r_squared.norm().max(1.0));
    }
}
