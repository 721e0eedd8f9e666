use std::sync::Arc;

use swgsemo::bench::star_graph;
use swgsemo::engine::{
    run, run_fast_sw_gsemo3d, run_gsemo2d, run_gsemo3d, run_one_plus_one_ea, run_sw_gsemo3d,
    sliding_window, Algorithm, Init, Observer, Phase, SlidingParams, Step,
};
use swgsemo::oracles::brute_force_front;
use swgsemo::problems::{gen_uniform_weights, surrogate, DEFAULT_BETAS};
use swgsemo::{
    seeded_rng, ConfidenceLevel, Individual, Objective3, ParetoArchive, ProblemInstance,
    StochasticWeights,
};

fn two_items() -> ProblemInstance {
    ProblemInstance::uniform_constraint(
        StochasticWeights::new(vec![1.0, 2.0], vec![4.0, 1.0]).unwrap(),
    )
}

fn star_instance(seed: u64) -> ProblemInstance {
    let g = Arc::new(star_graph(10));
    let w = gen_uniform_weights(10, &mut seeded_rng(seed, 0));
    ProblemInstance::dominating_set(g, w).unwrap()
}

/// Best surrogate weight over members with `c == k`.
fn best_at(pop: &[Individual], k: u32, k_alpha: f64) -> f64 {
    pop.iter()
        .filter(|m| m.obj.c == k)
        .map(|m| surrogate(m.obj.mu, m.obj.var, k_alpha))
        .fold(f64::INFINITY, f64::min)
}

fn solves_two_items(pop: &[Individual]) -> bool {
    let k = ConfidenceLevel::new(0.2).unwrap().k_alpha();
    let want = [0.0, 1.0 + 2.0 * k, 3.0 + 5f64.sqrt() * k];
    (0..3).all(|c| (best_at(pop, c, k) - want[c as usize]).abs() < 1e-12)
}

#[test]
fn two_item_optima_sw_and_gsemo3d() {
    let inst = two_items();
    let sw = (0..30)
        .filter(|&s| {
            let r = run_sw_gsemo3d(&inst, 10_000, Init::Zeros, &mut seeded_rng(s, 1)).unwrap();
            solves_two_items(&r.population)
        })
        .count();
    let gs = (0..30)
        .filter(|&s| {
            let r = run_gsemo3d(&inst, 10_000, Init::Random, &mut seeded_rng(s, 1)).unwrap();
            solves_two_items(&r.population)
        })
        .count();
    assert!(sw >= 29, "sw {sw}/30");
    assert!(gs >= 29, "gsemo3d {gs}/30");
}

#[derive(Default)]
struct Recorder {
    steps: Vec<(u64, Objective3, Objective3, bool)>,
    phases: Vec<Phase>,
}

impl Observer for Recorder {
    fn on_step(&mut self, s: &Step<'_>) {
        self.steps.push((s.t, s.parent, s.offspring, s.accepted));
        self.phases.push(s.phase);
    }
}

#[test]
fn collapsed_fast_equals_sw() {
    let inst = star_instance(3);
    let collapsed = SlidingParams {
        c_max_tracking: false,
        ..SlidingParams::PLAIN
    };
    for seed in 0..5 {
        for init in [Init::Zeros, Init::Random] {
            let mut a = Recorder::default();
            let mut b = Recorder::default();
            run(
                &inst,
                Algorithm::SwGsemo3d,
                4000,
                init,
                &mut seeded_rng(seed, 1),
                &mut a,
            )
            .unwrap();
            run(
                &inst,
                Algorithm::FastSwGsemo3d(collapsed),
                4000,
                init,
                &mut seeded_rng(seed, 1),
                &mut b,
            )
            .unwrap();
            assert_eq!(a.steps, b.steps);
            assert_eq!(a.phases, b.phases);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let inst = star_instance(1);
    let go = || {
        let mut rec = Recorder::default();
        run(
            &inst,
            Algorithm::FastSwGsemo3d(SlidingParams::FAST),
            3000,
            Init::Random,
            &mut seeded_rng(9, 1),
            &mut rec,
        )
        .unwrap();
        rec.steps
    };
    assert_eq!(go(), go());
}

struct PhaseOneCheck {
    min_mu_selections: usize,
}

impl Observer for PhaseOneCheck {
    fn on_select(&mut self, _t: u64, phase: Phase, parent: &Individual, archive: &ParetoArchive) {
        if phase == Phase::MinMu {
            let min = archive
                .iter()
                .map(|m| m.obj.mu)
                .fold(f64::INFINITY, f64::min);
            assert_eq!(parent.obj.mu, min);
            self.min_mu_selections += 1;
        }
    }
}

#[test]
fn phase_one_selects_minimum_mu() {
    let w = gen_uniform_weights(30, &mut seeded_rng(2, 0));
    let inst = ProblemInstance::uniform_constraint(w);
    for alg in [
        Algorithm::SwGsemo3d,
        Algorithm::FastSwGsemo3d(SlidingParams::FAST),
    ] {
        let mut obs = PhaseOneCheck {
            min_mu_selections: 0,
        };
        let r = run(
            &inst,
            alg,
            5000,
            Init::Random,
            &mut seeded_rng(4, 1),
            &mut obs,
        )
        .unwrap();
        assert!(obs.min_mu_selections > 0);
        assert_eq!(r.mu_min, 0.0);
        assert_eq!(obs.min_mu_selections as u64, r.t0.unwrap() - 1);
    }
}

struct WindowCheck {
    saw_window_after_sweep: bool,
    bound: u32,
    std: u32,
}

impl Observer for WindowCheck {
    fn on_step(&mut self, s: &Step<'_>) {
        if s.t > 9000 {
            assert_eq!(s.c_max, Some(self.bound));
            if let Phase::Window(w) = s.phase {
                assert_eq!((w.lo, w.hi), (self.bound - self.std, self.bound));
                self.saw_window_after_sweep = true;
            } else {
                panic!("unexpected phase {:?}", s.phase);
            }
        }
    }
}

#[test]
fn final_phase_uses_top_window_once_feasible() {
    let inst = star_instance(5);
    let mut obs = WindowCheck {
        saw_window_after_sweep: false,
        bound: 10,
        std: 3,
    };
    let p = SlidingParams {
        std: 3,
        ..SlidingParams::FAST
    };
    run(
        &inst,
        Algorithm::FastSwGsemo3d(p),
        10_000,
        Init::Zeros,
        &mut seeded_rng(0, 1),
        &mut obs,
    )
    .unwrap();
    assert!(obs.saw_window_after_sweep);
}

fn centre_only(inst: &ProblemInstance) -> Objective3 {
    let mut x = swgsemo::BitSolution::zeros(10);
    x.set(0, true);
    inst.evaluate(&x).unwrap()
}

#[test]
fn star_fast_finds_centre() {
    let mut feasible = 0;
    let mut centre = 0;
    for seed in 0..30 {
        let inst = star_instance(seed);
        let r = run_fast_sw_gsemo3d(
            &inst,
            100_000,
            SlidingParams::FAST,
            Init::Zeros,
            &mut seeded_rng(seed, 1),
        )
        .unwrap();
        feasible += r.population.iter().any(|m| m.obj.c == 10) as usize;
        centre += r.population.iter().any(|m| m.obj == centre_only(&inst)) as usize;
    }
    assert_eq!(feasible, 30);
    assert!(centre >= 28, "centre found in {centre}/30");
}

#[test]
fn star_gsemo2d_feasible() {
    for seed in 0..30 {
        let inst = star_instance(seed);
        let k_max = ConfidenceLevel::new(1e-14).unwrap().k_alpha();
        let r = run_gsemo2d(
            &inst,
            100_000,
            Init::Random,
            &mut seeded_rng(seed, 1),
            swgsemo::engine::default_penalty(inst.weights(), k_max),
        )
        .unwrap();
        assert!(r.population.iter().any(|m| m.obj.c == 10), "seed {seed}");
    }
}

#[test]
fn star_ea_near_optimal() {
    let level = ConfidenceLevel::new(0.2).unwrap();
    let mut close = 0;
    for seed in 0..30 {
        let inst = star_instance(seed);
        let opt = brute_force_front(&inst).unwrap()[&10]
            .iter()
            .map(|p| surrogate(p.mu, p.var, level.k_alpha()))
            .fold(f64::INFINITY, f64::min);
        let k_max = ConfidenceLevel::new(DEFAULT_BETAS[8]).unwrap().k_alpha();
        let r = run_one_plus_one_ea(
            &inst,
            &level,
            100_000,
            &mut seeded_rng(seed, 2),
            swgsemo::engine::default_penalty(inst.weights(), k_max),
        )
        .unwrap();
        assert!(r.feasible, "seed {seed}");
        close += (r.surrogate <= 1.05 * opt) as usize;
    }
    assert!(close >= 25, "{close}/30 within 5%");
}

#[test]
fn uniform_selection_is_uniform() {
    let mut a = ParetoArchive::new();
    for i in 0..5u32 {
        let o = Objective3::new(i as f64, (10 - i) as f64, 0);
        a.try_insert(Individual::new(
            swgsemo::BitSolution::from_mask(i as u64, 4),
            o,
        ));
    }
    assert_eq!(a.len(), 5);
    let mut rng = seeded_rng(0, 1);
    let draws = 100_000;
    let mut counts = [0f64; 5];
    for _ in 0..draws {
        counts[a.select_uniform(&mut rng).unwrap().obj.mu as usize] += 1.0;
    }
    let e = draws as f64 / 5.0;
    let chi2: f64 = counts.iter().map(|c| (c - e).powi(2) / e).sum();
    // chi-square with 4 degrees of freedom, upper 0.001 point
    assert!(chi2 < 18.467, "chi2 {chi2}");
}

/// With `a < 1` the number of steps whose window centre is `w` grows with `w`
/// and matches `t_max * ((w+1)^(1/a) - w^(1/a)) / B^(1/a)` up to rounding.
#[test]
fn schedule_time_allocation() {
    let (b, t_max) = (20u32, 200_000u64);
    let p = SlidingParams {
        t_frac: 1.0,
        std: 0,
        a: 0.5,
        epsilon: 0,
        c_max_tracking: false,
    };
    let mut steps = vec![0u64; b as usize + 1];
    for t in 1..=t_max {
        steps[sliding_window(t, t_max, b, &p).lo as usize] += 1;
    }
    let inv = 1.0 / p.a;
    for w in 0..b {
        let expect = t_max as f64 * ((w as f64 + 1.0).powf(inv) - (w as f64).powf(inv))
            / (b as f64).powf(inv);
        assert!((steps[w as usize] as f64 - expect).abs() <= 2.0, "w {w}");
    }
    assert!(steps[..b as usize].windows(2).all(|s| s[0] < s[1]));
}
