use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use greedy_lab::geometry::{facet_linking, Polytope, PolytopeDivision};
use greedy_lab::interpolation::{global_error, global_error_exact, local_error, Interpolant};
use greedy_lab::kernels::softmax;
use greedy_lab::theory::b_mu_set;
use greedy_lab::{metric, Configuration, Domain, EngineKind, EngineSpec, InterpolationCop, Preset, QuadratureGrid, TargetFunction};

fn unit() -> Domain {
    Domain::interval(0.0, 1.0).unwrap()
}

fn config_strategy(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..=1.0f64, 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn metric_axioms(a in config_strategy(8), b in config_strategy(8), c in config_strategy(8)) {
        let d = unit();
        let (x, y, z) = (
            Configuration::from_scalars(&a, &d).unwrap(),
            Configuration::from_scalars(&b, &d).unwrap(),
            Configuration::from_scalars(&c, &d).unwrap(),
        );
        prop_assert_eq!(metric(&x, &x, &d), 0.0);
        prop_assert_eq!(metric(&x, &y, &d), metric(&y, &x, &d));
        prop_assert!(metric(&x, &z, &d) <= metric(&x, &y, &d) + metric(&y, &z, &d) + 1e-12);
        prop_assert!(metric(&x, &y, &d) >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn prefix_shift_halves(base in config_strategy(6), y in 0.0..=1.0f64, z in 0.0..=1.0f64) {
        let d = unit();
        let eta = Configuration::from_scalars(&base, &d).unwrap();
        let a = eta.oplus(&[y], &d).unwrap();
        let b = eta.oplus(&[z], &d).unwrap();
        prop_assert!(metric(&a, &b, &d) <= (y - z).abs() / 2.0 + 1e-15);
    }

    #[test]
    fn order_is_stable_under_small_perturbation(
        pts in prop::collection::vec(0.0..=1.0f64, 2..10),
        noise in prop::collection::vec(-1.0..1.0f64, 10),
    ) {
        let mut sorted = pts.clone();
        sorted.sort_by(f64::total_cmp);
        let d_min = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        prop_assume!(d_min > 1e-6);
        let d = Domain::interval(-1.0, 2.0).unwrap();
        let eta = Configuration::from_scalars(&pts, &d).unwrap();
        let scale = d_min / 2f64.powi(pts.len() as i32 + 1);
        let moved: Vec<f64> = pts.iter().zip(&noise).map(|(p, n)| p + 0.999 * n * scale).collect();
        let eta2 = Configuration::from_scalars(&moved, &d).unwrap();
        prop_assert_eq!(eta.order_permutation().unwrap(), eta2.order_permutation().unwrap());
    }

    #[test]
    fn convexity_sandwich_example1(nodes in prop::collection::vec(0.0..5.0f64, 1..8), p in 0.0..5.0f64) {
        let d = Preset::Example1.domain();
        let f = Preset::Example1.target();
        let eta = Configuration::from_scalars(&nodes, &d).unwrap();
        let interp = Interpolant::new(&f, &eta, &d).unwrap();
        let k = interp.knots();
        let i = k.partition_point(|&x| x <= p).clamp(1, k.len() - 1);
        let (lo, hi) = (k[i - 1], k[i]);
        prop_assume!(p > lo && p < hi);
        let gap = interp.eval(p).unwrap() - f.eval(p);
        let w = (hi - p) * (p - lo);
        prop_assert!(gap >= 1.0 * w - 1e-12 * (1.0 + gap.abs()));
        prop_assert!(gap <= 6.0 * w + 1e-12 * (1.0 + gap.abs()));
    }

    #[test]
    fn local_error_monotone_for_convex(nodes in prop::collection::vec(0.0..10.0f64, 1..8), y in 0.0..10.0f64) {
        for preset in [Preset::Example1, Preset::Example2] {
            let d = preset.domain();
            let (a, b) = d.bounds_1d().unwrap();
            let f = preset.target();
            let scaled: Vec<f64> = nodes.iter().map(|x| a + (b - a) * x / 10.0).collect();
            let yy = a + (b - a) * y / 10.0;
            let eta = Configuration::from_scalars(&scaled, &d).unwrap();
            let next = eta.oplus(&[yy], &d).unwrap();
            let grid = QuadratureGrid::new(&d, 200).unwrap();
            for &x in grid.points() {
                prop_assert!(local_error(&f, &next, x, &d).unwrap() <= local_error(&f, &eta, x, &d).unwrap() + 1e-12);
            }
            prop_assert!(global_error_exact(&f, &next, &d).unwrap() <= global_error_exact(&f, &eta, &d).unwrap() + 1e-12);
        }
    }

    #[test]
    fn global_error_continuity(nodes in prop::collection::vec(0.05..0.95f64, 1..8), shift in prop::collection::vec(-1.0..1.0f64, 8), h in 1e-6..1e-2f64) {
        // f = sin 2x on [0, 10]: ||f||_sup = 1, ||f'||_sup = 2.
        let preset = Preset::Example3;
        let d = preset.domain();
        let f = preset.target();
        let pts: Vec<f64> = nodes.iter().map(|x| 10.0 * x).collect();
        let moved: Vec<f64> = pts.iter().zip(&shift).map(|(x, s)| x + s * h).collect();
        let max_move = pts.iter().zip(&moved).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let grid = QuadratureGrid::new(&d, 4001).unwrap();
        let g0 = global_error(&f, &Configuration::from_scalars(&pts, &d).unwrap(), &grid, &d).unwrap();
        let g1 = global_error(&f, &Configuration::from_scalars(&moved, &d).unwrap(), &grid, &d).unwrap();
        let lip = 2.0f64.max(1.0);
        prop_assert!((g0 - g1).abs() <= 2.0 * 10.0 * lip * max_move + 1e-9);
    }

    #[test]
    fn b_mu_intervals_inside_gaps(nodes in config_strategy(10), mu in 0.01..0.49f64) {
        let d = unit();
        let eta = Configuration::from_scalars(&nodes, &d).unwrap();
        let set = b_mu_set(&eta, mu, &d).unwrap();
        let total: f64 = set.iter().map(|(l, h)| h - l).sum();
        prop_assert!((total - (1.0 - 2.0 * mu)).abs() < 1e-12);
        for w in set.windows(2) {
            prop_assert!(w[0].1 <= w[1].0);
        }
        prop_assert_eq!(set.len(), eta.count() + 1);
    }

    #[test]
    fn softmax_is_normalised(js in prop::collection::vec(0.0..1000.0f64, 1..50), alpha in 0.0..500.0f64) {
        let logs: Vec<f64> = js.iter().map(|j| alpha * j).collect();
        let p = softmax(&logs);
        prop_assert!(p.iter().all(|x| x.is_finite() && *x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn quadratic_sandwich_is_tight() {
    let d = unit();
    let f = TargetFunction::new("x^2", |x| x * x).with_convexity(2.0, 2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    use rand::Rng;
    for _ in 0..10_000 {
        let n = rng.random_range(1..6);
        let pts: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let eta = Configuration::from_scalars(&pts, &d).unwrap();
        let interp = Interpolant::new(&f, &eta, &d).unwrap();
        let p: f64 = rng.random();
        let k = interp.knots();
        let i = k.partition_point(|&x| x <= p).clamp(1, k.len() - 1);
        let expected = (k[i] - p) * (p - k[i - 1]);
        assert!((interp.eval(p).unwrap() - p * p - expected).abs() < 1e-12);
    }
}

#[test]
fn partition_invariant_under_random_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let square = Polytope::from_domain(&Domain::unit_square()).unwrap();
    let mut div = PolytopeDivision::initial(&[0.4, 0.55], &square).unwrap();
    assert_eq!(div.len(), 4);
    use rand::Rng;
    for n in 1..=200 {
        let cell = rng.random_range(0..div.len());
        let poly = div.cells()[cell].polytope.clone();
        let y = loop {
            let c = poly.sample_uniform(&mut rng);
            if poly.contains_strictly(&c) {
                break c;
            }
        };
        div.split(cell, &y).unwrap();
        assert_eq!(div.len(), 4 + 2 * n);
        assert!((div.total_volume() - 1.0).abs() < 1e-9);
    }

    let d = Domain::interval(0.0, 3.0).unwrap();
    let mut div = PolytopeDivision::single(Polytope::from_domain(&d).unwrap());
    for n in 1..=200 {
        let cell = rng.random_range(0..div.len());
        let poly = div.cells()[cell].polytope.clone();
        let (lo, hi) = (poly.vertex(0)[0], poly.vertex(1)[0]);
        div.split(cell, &[lo + (hi - lo) * rng.random_range(0.01..0.99)]).unwrap();
        assert_eq!(div.len(), n + 1);
        assert!((div.total_volume() - 3.0).abs() < 3e-9);
    }
}

#[test]
fn facet_linking_cells_contain_the_point() {
    let tri = Polytope::triangle([0.0, 0.0], [2.0, 0.0], [0.0, 2.0]).unwrap();
    let p = [0.5, 0.4];
    for cell in facet_linking(&p, &tri).unwrap() {
        assert!((0..cell.num_vertices()).any(|i| cell.vertex(i) == p));
    }
}

#[test]
fn rpdm_alpha_zero_samples_uniformly() {
    let d = unit();
    let cop = InterpolationCop::new(TargetFunction::new("x^2", |x| x * x), d.clone()).unwrap();
    let mut engine = EngineSpec { alpha: 0.0, ..EngineSpec::new(EngineKind::Rpdm) }.build(&d).unwrap();
    let eta = engine.initialize_at(&[0.5], &cop).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bins = [0usize; 20];
    let n = 100_000;
    for _ in 0..n {
        let y = engine.propose(&eta, &cop, &mut rng).unwrap().y[0];
        bins[((y * 20.0) as usize).min(19)] += 1;
    }
    let expected = n as f64 / 20.0;
    let chi2: f64 = bins.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 99.9% quantile of chi-square with 19 degrees of freedom.
    assert!(chi2 < 43.82, "chi2 = {chi2}");
}
