//! Property tests over randomly drawn orders and boundary data: the
//! structural invariants that must hold on the whole admissible range,
//! not just at the frozen reference points.

use proptest::prelude::*;

use fracstefan::special::{sigma_alpha, KernelOrder, Truncation};
use fracstefan::stefan::{
    build_dirichlet, build_neumann, g_alpha, h_alpha, DirichletProblem, NeumannProblem,
    RootBracket,
};

fn tr() -> Truncation {
    Truncation::default()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// The kernel is positive wherever the plain series tier reaches.
    #[test]
    fn kernel_positive(alpha in 0.15f64..=1.0, w in 1e-3f64..4.0) {
        let a = KernelOrder::new(alpha).unwrap();
        let s = sigma_alpha(a, w, &tr()).unwrap();
        prop_assert!(s > 0.0, "sigma_{alpha}({w}) = {s}");
    }

    /// Dirichlet solve: positive front, tiny fixed-point residual, and
    /// a profile decreasing from U0 to Um.
    #[test]
    fn dirichlet_solution_well_formed(
        alpha in 0.2f64..=1.0,
        du in 0.05f64..5.0,
        um in -2.0f64..2.0,
    ) {
        let a = KernelOrder::new(alpha).unwrap();
        let p = DirichletProblem::new(a, um + du, um).unwrap();
        let sol = build_dirichlet(&p, &RootBracket::default(), &tr()).unwrap();
        prop_assert!(sol.front_coeff > 0.0);
        let r = (h_alpha(&p, sol.front_coeff, &tr()).unwrap() - sol.front_coeff).abs();
        prop_assert!(r <= 1e-10, "residual {r}");
        let t = 1.0;
        let s = sol.front_position(t).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=8 {
            let u = sol.evaluate(s * i as f64 / 8.0, t, &tr()).unwrap();
            prop_assert!(u <= prev + 1e-12, "profile rose");
            prev = u;
        }
        prop_assert!((sol.evaluate(0.0, t, &tr()).unwrap() - (um + du)).abs() < 1e-12);
        prop_assert!((sol.evaluate(s, t, &tr()).unwrap() - um).abs() < 1e-10);
    }

    /// Neumann solve: the front coefficient stays inside (0, g0(1+alpha)]
    /// and the fixed-point residual is tiny.
    #[test]
    fn neumann_solution_well_formed(
        alpha in 0.2f64..=1.0,
        g0 in 0.05f64..4.0,
        gm in -2.0f64..2.0,
    ) {
        let a = KernelOrder::new(alpha).unwrap();
        let p = NeumannProblem::new(a, g0, gm).unwrap();
        let sol = build_neumann(&p, &RootBracket::default(), &tr()).unwrap();
        prop_assert!(sol.front_coeff > 0.0 && sol.front_coeff <= g0 * (1.0 + alpha));
        let r = (g_alpha(&p, sol.front_coeff, &tr()).unwrap() - sol.front_coeff).abs();
        prop_assert!(r <= 1e-10, "residual {r}");
    }

    /// Similarity scaling of the front: s(lambda^(1+alpha) t) = lambda s(t).
    #[test]
    fn front_scales_with_similarity(
        alpha in 0.2f64..=1.0,
        lambda in 0.2f64..5.0,
        t in 0.1f64..10.0,
    ) {
        let a = KernelOrder::new(alpha).unwrap();
        let p = DirichletProblem::new(a, 1.0, 0.0).unwrap();
        let sol = build_dirichlet(&p, &RootBracket::default(), &tr()).unwrap();
        let lhs = sol.front_position(lambda.powf(1.0 + alpha) * t).unwrap();
        let rhs = lambda * sol.front_position(t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs(), "{lhs} vs {rhs}");
    }

    /// The Stefan residual vanishes at machine scale for every solve.
    #[test]
    fn stefan_residual_uniformly_small(alpha in 0.2f64..=1.0, t in 0.2f64..5.0) {
        let a = KernelOrder::new(alpha).unwrap();
        let p = NeumannProblem::new(a, 1.0, 0.0).unwrap();
        let sol = build_neumann(&p, &RootBracket::default(), &tr()).unwrap();
        let rel = sol.stefan_residual(t, &tr()).unwrap().abs()
            / sol.front_speed(t).unwrap().abs();
        prop_assert!(rel <= 1e-8, "relative residual {rel}");
    }
}
