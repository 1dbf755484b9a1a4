//! Property suites shared by the `properties` and `acceptance` targets.
//!
//! Each suite drives proptest directly with a deterministic generator and
//! returns `Err` with the minimal failing case.

#![allow(dead_code)]

use std::ops::ControlFlow;

use neuroevo::env::{
    action_from_unit, action_to_unit, denormalize_observation, normalize_observation, rk4_step,
    Environment, Multiplexer, MultiplexerCase,
};
use neuroevo::evolution::{mutate, EvolutionConfig, MutationKind};
use neuroevo::harness::{mann_whitney_u, run_single, Ablation, Alternative, ExperimentConfig, Task};
use neuroevo::model::{
    update_internal_state, Activation, AdaptationSpeed, ConnectionGene, Genome, NeuronGene,
    NeuronId, Phenotype, Role,
};
use neuroevo::rng;
use neuroevo::spectrum::{compute_spectrum, Spectrum};
use neuroevo::NoveltyMap;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SuiteResult = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> SuiteResult {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

/// Internal state under a constant activation approaches it geometrically:
/// `Ins_t - a = (Ins_0 - a) (1 - 1/s)^t`.
pub fn geometric_convergence() -> SuiteResult {
    let strategy = (
        -10.0f64..10.0,
        -10.0f64..10.0,
        prop::sample::select(vec![1u32, 7, 49]),
        0usize..300,
    );
    check(512, strategy, |(ins0, a, s, t)| {
        let mut ins = ins0;
        for _ in 0..t {
            ins = update_internal_state(ins, a, s);
        }
        let closed = a + (ins0 - a) * (1.0 - 1.0 / f64::from(s)).powi(t as i32);
        prop_assert!((ins - closed).abs() <= 1e-9 * (1.0 + ins0.abs() + a.abs()));
        if t > 0 {
            prop_assert!((ins - a).abs() <= (ins0 - a).abs() + 1e-12);
        }
        Ok(())
    })
}

/// Feed-forward network description used by the matrix oracle.
#[derive(Debug, Clone)]
struct Layered {
    inputs: usize,
    hidden: Vec<Activation>,
    outputs: usize,
    /// `weights[to][from]`, zero where there is no edge; only `from < to`.
    weights: Vec<Vec<f64>>,
}

fn layered_strategy() -> impl Strategy<Value = (Layered, Vec<Vec<f64>>)> {
    (1usize..4, 0usize..6, 1usize..3).prop_flat_map(|(inputs, hidden, outputs)| {
        let n = inputs + hidden + outputs;
        let acts = prop::collection::vec(
            prop::sample::select(vec![Activation::Identity, Activation::Sigmoid, Activation::Threshold]),
            hidden,
        );
        let edges = prop::collection::vec(
            prop::option::weighted(0.4, -1.0f64..1.0),
            n * n,
        );
        let steps = prop::collection::vec(prop::collection::vec(-2.0f64..2.0, inputs), 1..4);
        (acts, edges, steps).prop_map(move |(hidden_acts, edges, steps)| {
            let mut weights = vec![vec![0.0; n]; n];
            for to in 0..n {
                for from in 0..n {
                    let from_output = from >= inputs + hidden;
                    let to_input = to < inputs;
                    if from < to && !from_output && !to_input {
                        if let Some(w) = edges[to * n + from] {
                            // f32 storage in the genome
                            weights[to][from] = f64::from(w as f32);
                        }
                    }
                }
            }
            (
                Layered {
                    inputs,
                    hidden: hidden_acts,
                    outputs,
                    weights,
                },
                steps,
            )
        })
    })
}

impl Layered {
    fn genome(&self) -> Genome {
        let mut genome = Genome::with_interface(self.inputs, self.outputs);
        // interface ids are 0..inputs then inputs..inputs+outputs; hidden
        // neurons are placed between them in the oracle's ordering.
        genome.neurons.truncate(self.inputs);
        for (k, &act) in self.hidden.iter().enumerate() {
            genome.neurons.push(NeuronGene::hidden(
                NeuronId((self.inputs + k) as u32),
                act,
                AdaptationSpeed::One,
            ));
        }
        for k in 0..self.outputs {
            genome.neurons.push(NeuronGene {
                id: NeuronId((self.inputs + self.hidden.len() + k) as u32),
                role: Role::Output,
                activation: Activation::Identity,
                speed: AdaptationSpeed::One,
                interface_index: k,
            });
        }
        genome.next_id = genome.neurons.len() as u32;
        for (to, row) in self.weights.iter().enumerate() {
            for (from, &w) in row.iter().enumerate() {
                if w != 0.0 {
                    genome.connections.push(ConnectionGene {
                        from: NeuronId(from as u32),
                        to: NeuronId(to as u32),
                        weight: w as f32,
                        modulator: None,
                    });
                }
            }
        }
        genome
    }

    /// Matrix forward pass. Returns `None` when a value sits so close to a
    /// discontinuity (threshold at 0, activity cutoff) that summation order
    /// could flip it.
    fn forward(&self, x: &[f64]) -> Option<Vec<f64>> {
        let n = self.weights.len();
        let mut y = vec![0.0; n];
        y[..self.inputs].copy_from_slice(x);
        for to in self.inputs..n {
            let sum: f64 = (0..to).map(|from| self.weights[to][from] * y[from]).sum();
            let hidden_index = to - self.inputs;
            let act = self.hidden.get(hidden_index).copied().unwrap_or(Activation::Identity);
            let value = match act {
                Activation::Identity => sum,
                Activation::Sigmoid => (4.0 * sum).tanh(),
                Activation::Threshold => {
                    if sum.abs() < 1e-9 {
                        return None;
                    }
                    if sum > 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                _ => unreachable!(),
            };
            if (value.abs() - 0.001).abs() < 1e-9 {
                return None;
            }
            y[to] = if value.abs() <= 0.001 { 0.0 } else { value };
        }
        Some(y[n - self.outputs..].to_vec())
    }
}

/// Acyclic networks give the same outputs as a brute-force matrix evaluation.
pub fn acyclic_equivalence() -> SuiteResult {
    check(256, layered_strategy(), |(net, steps)| {
        let genome = net.genome();
        prop_assert!(genome.validate().is_ok());
        let mut phenotype = Phenotype::new(&genome, 0.0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for x in steps {
            let Some(expected) = net.forward(&x) else {
                return Err(TestCaseError::reject("too close to a discontinuity"));
            };
            let got = phenotype
                .step(&x, &mut rng)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            for (g, e) in got.iter().zip(&expected) {
                prop_assert!((g - e).abs() <= 1e-9 * (1.0 + e.abs()), "{got:?} vs {expected:?}");
            }
        }
        Ok(())
    })
}

fn oracle_distance(a: &[u32; 6], b: &[u32; 6]) -> f64 {
    let mut s = 0.0;
    for i in 0..6 {
        s += (f64::from(a[i]) - f64::from(b[i])).powi(2);
    }
    s.sqrt()
}

/// Straightforward re-statement of the map update rules.
fn oracle_present(cells: &mut Vec<[u32; 6]>, capacity: usize, x: [u32; 6]) -> usize {
    if cells.len() < capacity {
        if !cells.contains(&x) {
            cells.push(x);
        }
    } else {
        let uniq: Vec<f64> = (0..cells.len())
            .map(|i| {
                (0..cells.len())
                    .filter(|&j| j != i)
                    .map(|j| oracle_distance(&cells[i], &cells[j]))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let mut least = 0;
        for i in 1..uniq.len() {
            if uniq[i] < uniq[least] {
                least = i;
            }
        }
        let novelty = cells
            .iter()
            .map(|c| oracle_distance(c, &x))
            .fold(f64::INFINITY, f64::min);
        if novelty > uniq[least] {
            cells[least] = x;
        }
    }
    let mut best = 0;
    for i in 1..cells.len() {
        if oracle_distance(&cells[i], &x) < oracle_distance(&cells[best], &x) {
            best = i;
        }
    }
    best
}

/// Capacity, replacement and nearest-cell behaviour match the oracle.
pub fn novelty_map_oracle() -> SuiteResult {
    let strategy = (
        1usize..8,
        prop::collection::vec(prop::array::uniform6(0u32..4), 1..60),
    );
    check(256, strategy, |(capacity, inputs)| {
        let mut map = NoveltyMap::new(capacity).unwrap();
        let mut cells: Vec<[u32; 6]> = Vec::new();
        for x in inputs {
            let got = map.present(&Spectrum(x));
            let expected = oracle_present(&mut cells, capacity, x);
            prop_assert_eq!(got, expected);
            prop_assert!(map.len() <= capacity);
            let stored: Vec<[u32; 6]> = map.cells().iter().map(|s| s.0).collect();
            prop_assert_eq!(&stored, &cells);
            let dists: Vec<f64> = stored.iter().map(|c| oracle_distance(c, &x)).collect();
            let min = dists.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert_eq!(dists.iter().position(|&d| d == min), Some(got));
            for i in 0..stored.len() {
                for j in i + 1..stored.len() {
                    prop_assert_ne!(stored[i], stored[j]);
                }
            }
        }
        Ok(())
    })
}

pub fn random_genome(seed: u64, mutations: usize, cfg: &EvolutionConfig) -> Genome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut genome = Genome::with_interface(2, 1);
    for _ in 0..mutations {
        mutate(&mut genome, cfg, &mut rng);
    }
    genome
}

fn growth_config() -> EvolutionConfig {
    EvolutionConfig {
        mutation_probabilities: [0.3, 0.05, 0.4, 0.25],
        ..EvolutionConfig::default()
    }
}

/// Spectra ignore connections and the order and numbering of neurons.
pub fn spectrum_invariance() -> SuiteResult {
    let strategy = (any::<u64>(), 0usize..80, any::<u64>());
    check(256, strategy, |(seed, mutations, shuffle_seed)| {
        let genome = random_genome(seed, mutations, &growth_config());
        let original = compute_spectrum(&genome);

        let mut shuffled = genome.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle_seed);
        shuffled.neurons.shuffle(&mut rng);
        // renumber every neuron with a fresh, order-scrambled id
        let mut ids: Vec<u32> = (0..shuffled.neurons.len() as u32).map(|i| i * 3 + 7).collect();
        ids.shuffle(&mut rng);
        let mapping: Vec<(NeuronId, NeuronId)> = shuffled
            .neurons
            .iter()
            .zip(&ids)
            .map(|(n, &id)| (n.id, NeuronId(id)))
            .collect();
        let remap = |id: NeuronId| mapping.iter().find(|(old, _)| *old == id).unwrap().1;
        for n in &mut shuffled.neurons {
            n.id = remap(n.id);
        }
        for c in &mut shuffled.connections {
            c.from = remap(c.from);
            c.to = remap(c.to);
            c.modulator = c.modulator.map(remap);
        }
        shuffled.connections.shuffle(&mut rng);
        prop_assert_eq!(compute_spectrum(&shuffled), original);

        let mut rewired = genome.clone();
        rewired.connections.clear();
        prop_assert_eq!(compute_spectrum(&rewired), original);
        if !genome.neurons.is_empty() {
            rewired.connections.push(ConnectionGene {
                from: genome.neurons[0].id,
                to: genome.neurons[genome.neurons.len() - 1].id,
                weight: 0.25,
                modulator: Some(genome.neurons[0].id),
            });
            prop_assert_eq!(compute_spectrum(&rewired), original);
        }
        Ok(())
    })
}

/// 10^5 mutations under assorted configurations never break a genome, and
/// every intermediate genome builds a phenotype.
pub fn integrity_fuzz() -> SuiteResult {
    let configs: Vec<EvolutionConfig> = vec![
        EvolutionConfig::default(),
        growth_config(),
        EvolutionConfig {
            mutation_probabilities: [0.25, 0.25, 0.25, 0.25],
            neuromodulation_probability: 0.9,
            control_neuron_probability: 0.6,
            ..EvolutionConfig::default()
        },
        EvolutionConfig {
            mutation_probabilities: [0.1, 0.4, 0.3, 0.2],
            real_weights: false,
            ..EvolutionConfig::default()
        },
    ];
    let mut total = 0usize;
    for (k, cfg) in configs.iter().enumerate() {
        for chain in 0..5u64 {
            let mut rng = rng::stream(k as u64, &[chain]);
            let mut genome = Genome::with_interface(1 + chain as usize, 1 + k % 2);
            for step in 0..5_000 {
                mutate(&mut genome, cfg, &mut rng);
                total += 1;
                genome
                    .validate()
                    .map_err(|e| format!("config {k} chain {chain} step {step}: {e}"))?;
                if step % 250 == 0 {
                    let mut net = Phenotype::new(&genome, cfg.excitation_threshold)
                        .map_err(|e| format!("phenotype: {e}"))?;
                    let inputs = vec![0.5; net.input_count()];
                    net.step(&inputs, &mut rng).map_err(|e| format!("step: {e}"))?;
                    let back = Genome::from_text(&genome.to_text())
                        .map_err(|e| format!("text round trip: {e}"))?;
                    if back.neurons != genome.neurons || back.connections != genome.connections {
                        return Err(format!("text round trip changed config {k} chain {chain}"));
                    }
                }
            }
        }
    }
    if total < 100_000 {
        return Err(format!("only {total} mutations exercised"));
    }
    Ok(())
}

/// Observed mutation kind frequencies lie within 3 sigma of their probabilities.
pub fn mutation_frequencies() -> SuiteResult {
    let cfg = EvolutionConfig::default();
    let n = 100_000usize;
    let mut counts = [0usize; 4];
    let mut rng = rng::stream(42, &[]);
    let mut genome = Genome::with_interface(2, 1);
    for _ in 0..n {
        let kind = mutate(&mut genome, &cfg, &mut rng);
        counts[MutationKind::ALL.iter().position(|&k| k == kind).unwrap()] += 1;
        if genome.connections.len() > 200 {
            genome = Genome::with_interface(2, 1);
        }
    }
    for (i, &p) in cfg.mutation_probabilities.iter().enumerate() {
        let mean = n as f64 * p;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        if (counts[i] as f64 - mean).abs() > 3.0 * sigma {
            return Err(format!("kind {i}: {} observed, {mean} expected", counts[i]));
        }
    }
    Ok(())
}

/// With the same seed, an ablated configuration makes exactly the same
/// structural decisions; only the removed option differs.
pub fn ablation_orthogonality() -> SuiteResult {
    check(64, (any::<u64>(), 50usize..400), |(seed, mutations)| {
        let base = growth_config();
        let reference = random_genome(seed, mutations, &base);
        for ablation in Ablation::ALL {
            let mut cfg = base.clone();
            ablation.apply(&mut cfg);
            let ablated = random_genome(seed, mutations, &cfg);
            let mut expected = reference.clone();
            let mut got = ablated.clone();
            prop_assert_eq!(expected.neurons.len(), got.neurons.len());
            prop_assert_eq!(expected.connections.len(), got.connections.len());
            match ablation {
                Ablation::NoSlow => {
                    for n in expected.neurons.iter_mut() {
                        n.speed = AdaptationSpeed::One;
                    }
                }
                Ablation::NoRealWeights => {
                    for c in expected.connections.iter_mut() {
                        c.weight = if c.weight < 0.0 { -1.0 } else { 1.0 };
                    }
                }
                Ablation::NoNeuromodulation => {
                    prop_assert!(got.connections.iter().all(|c| c.modulator.is_none()));
                    for c in expected.connections.iter_mut() {
                        c.modulator = None;
                    }
                }
                Ablation::NoControl => {
                    prop_assert!(got.neurons.iter().all(|n| !n.is_control()));
                    for (e, g) in expected.neurons.iter_mut().zip(&mut got.neurons) {
                        if e.is_control() {
                            e.activation = g.activation;
                        }
                    }
                }
                Ablation::NoIdentity
                | Ablation::NoRandom
                | Ablation::NoSigmoid
                | Ablation::NoThreshold => {
                    let removed = match ablation {
                        Ablation::NoIdentity => Activation::Identity,
                        Ablation::NoRandom => Activation::Random,
                        Ablation::NoSigmoid => Activation::Sigmoid,
                        _ => Activation::Threshold,
                    };
                    for (e, g) in expected.neurons.iter_mut().zip(&mut got.neurons) {
                        if e.role == Role::Hidden {
                            prop_assert_ne!(g.activation, removed);
                            prop_assert_eq!(e.is_control(), g.is_control());
                            e.activation = g.activation;
                        }
                    }
                }
            }
            prop_assert_eq!(expected, got, "{:?}", ablation);
        }
        Ok(())
    })
}

/// Identical configuration and seed reproduce a run bit for bit.
pub fn run_determinism() -> SuiteResult {
    for task in [Task::FunctionApprox, Task::MountainCar] {
        let mut cfg = ExperimentConfig::new(task, "unused");
        cfg.trials = 500;
        cfg.master_seed = 9;
        let a = run_single(&cfg, 1, |_| ControlFlow::Continue(())).map_err(|e| e.to_string())?;
        let b = run_single(&cfg, 1, |_| ControlFlow::Continue(())).map_err(|e| e.to_string())?;
        if a.record.to_csv() != b.record.to_csv() {
            return Err(format!("{task}: learning curves differ"));
        }
        if a.state != b.state {
            return Err(format!("{task}: final populations differ"));
        }
        for (x, y) in a.record.rows.iter().zip(&b.record.rows) {
            if x.best_accumulated.to_bits() != y.best_accumulated.to_bits()
                || x.mean_fitness.to_bits() != y.mean_fitness.to_bits()
            {
                return Err(format!("{task}: values differ in the last bit"));
            }
        }
    }
    Ok(())
}

/// Each trial presents every multiplexer case exactly once.
pub fn multiplexer_coverage() -> SuiteResult {
    let mut oracle: Vec<Vec<bool>> = Vec::new();
    for address in 0..8u32 {
        for data in 0..256u32 {
            let mut bits: Vec<bool> = (0..3).rev().map(|b| (address >> b) & 1 == 1).collect();
            bits.extend((0..8).map(|i| (data >> i) & 1 == 1));
            oracle.push(bits);
        }
    }
    oracle.sort();
    check(8, any::<u64>(), |seed| {
        let mut env = Multiplexer::new(3);
        env.reset(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut seen = Vec::with_capacity(2048);
        let mut obs = vec![0.0; 11];
        loop {
            env.observe(&mut obs);
            let bits: Vec<bool> = obs.iter().map(|&v| v > 0.5).collect();
            let case = MultiplexerCase {
                address: bits[..3].to_vec(),
                data: bits[3..].to_vec(),
            };
            let t = env.step(&[if case.correct() { 1.0 } else { 0.0 }]).unwrap();
            prop_assert_eq!(t.reward, 0.0);
            seen.push(bits);
            if t.done {
                break;
            }
        }
        seen.sort();
        prop_assert_eq!(&seen, &oracle);
        Ok(())
    })
}

/// Two-pole dynamics written out independently from the reference equations.
pub fn oracle_rk4(state: &[f64; 6], force: f64, dt: f64) -> [f64; 6] {
    const G: f64 = -9.8;
    const MUP: f64 = 0.000002;
    let masses = [0.1, 0.01];
    let half_lengths = [0.5, 0.05];
    let f = |s: &[f64]| -> Vec<f64> {
        let theta = [s[2], s[4]];
        let omega = [s[3], s[5]];
        let mut eff_force = 0.0;
        let mut eff_mass = 0.0;
        for i in 0..2 {
            let ml = masses[i] * half_lengths[i];
            eff_force += ml * omega[i].powi(2) * theta[i].sin()
                + 0.75 * masses[i] * theta[i].cos() * (MUP * omega[i] / ml + G * theta[i].sin());
            eff_mass += masses[i] * (1.0 - 0.75 * theta[i].cos().powi(2));
        }
        let acc = (force + eff_force) / (1.0 + eff_mass);
        let mut d = vec![s[1], acc, s[3], 0.0, s[5], 0.0];
        for i in 0..2 {
            let ml = masses[i] * half_lengths[i];
            d[3 + 2 * i] = -0.75 / half_lengths[i]
                * (acc * theta[i].cos() + G * theta[i].sin() + MUP * omega[i] / ml);
        }
        d
    };
    let y0 = state.to_vec();
    let add = |y: &[f64], k: &[f64], h: f64| -> Vec<f64> { y.iter().zip(k).map(|(a, b)| a + h * b).collect() };
    let k1 = f(&y0);
    let k2 = f(&add(&y0, &k1, dt * 0.5));
    let k3 = f(&add(&y0, &k2, dt * 0.5));
    let k4 = f(&add(&y0, &k3, dt));
    let mut out = [0.0; 6];
    for i in 0..6 {
        out[i] = y0[i] + dt * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    }
    out
}

/// The environment's integrator agrees with the oracle to 1e-9 per step.
pub fn double_pole_integrators() -> SuiteResult {
    let strategy = (
        prop::array::uniform6(-1.0f64..1.0),
        -10.0f64..10.0,
    );
    check(100, strategy, |(raw, force)| {
        let scale = [2.4, 2.0, 0.6, 2.0, 0.6, 4.0];
        let mut state = [0.0; 6];
        for i in 0..6 {
            state[i] = raw[i] * scale[i];
        }
        let a = rk4_step(&state, force, 0.01);
        let b = oracle_rk4(&state, force, 0.01);
        for i in 0..6 {
            prop_assert!((a[i] - b[i]).abs() < 1e-9, "{a:?} vs {b:?}");
        }
        Ok(())
    })
}

/// `U` for the pooled permutation `assignment` (true = sample a), doubled.
fn doubled_u(a: &[f64], b: &[f64]) -> i64 {
    let mut u2 = 0;
    for x in a {
        for y in b {
            if x > y {
                u2 += 2;
            } else if x == y {
                u2 += 1;
            }
        }
    }
    u2
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exact Mann-Whitney p-values equal brute-force permutation p-values.
pub fn mann_whitney_permutation() -> SuiteResult {
    let sample = || prop::collection::vec((0u8..6).prop_map(f64::from), 1..=6);
    check(256, (sample(), sample()), |(a, b)| {
        let pooled: Vec<f64> = a.iter().chain(&b).copied().collect();
        let observed = doubled_u(&a, &b);
        let (mut le, mut ge, mut total) = (0u64, 0u64, 0u64);
        for pick in subsets(pooled.len(), a.len()) {
            let xa: Vec<f64> = pick.iter().map(|&i| pooled[i]).collect();
            let xb: Vec<f64> = (0..pooled.len())
                .filter(|i| !pick.contains(i))
                .map(|i| pooled[i])
                .collect();
            let u = doubled_u(&xa, &xb);
            total += 1;
            le += u64::from(u <= observed);
            ge += u64::from(u >= observed);
        }
        let (u, p_less) = mann_whitney_u(&a, &b, Alternative::Less).unwrap();
        let (_, p_greater) = mann_whitney_u(&a, &b, Alternative::Greater).unwrap();
        prop_assert_eq!((2.0 * u) as i64, observed);
        prop_assert!((p_less - le as f64 / total as f64).abs() < 1e-12);
        prop_assert!((p_greater - ge as f64 / total as f64).abs() < 1e-12);
        Ok(())
    })
}

/// Wrapping then unwrapping is the identity on the declared ranges.
pub fn normalization_round_trip() -> SuiteResult {
    let strategy = (-1e3f64..1e3, 1e-3f64..1e3, 0.0f64..=1.0);
    check(512, strategy, |(lo, width, t)| {
        let range = (lo, lo + width);
        let v = lo + t * width;
        let n = normalize_observation(v, range);
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&n));
        prop_assert!((denormalize_observation(n, range) - v).abs() <= 1e-9 * (1.0 + v.abs()));
        let a = action_from_unit(t, range);
        prop_assert!((action_to_unit(a, range) - t).abs() <= 1e-9);
        Ok(())
    })
}

/// Every property suite, in the order reported by the acceptance target.
pub fn all_suites() -> Vec<(&'static str, fn() -> SuiteResult)> {
    vec![
        ("internal-state geometric convergence", geometric_convergence as fn() -> SuiteResult),
        ("acyclic network matrix equivalence", acyclic_equivalence),
        ("novelty map oracle equivalence", novelty_map_oracle),
        ("spectrum permutation/connection invariance", spectrum_invariance),
        ("genome integrity over 1e5 mutations", integrity_fuzz),
        ("mutation frequencies within 3 sigma", mutation_frequencies),
        ("ablation orthogonality", ablation_orthogonality),
        ("multiplexer case coverage", multiplexer_coverage),
        ("double-pole dual integrator agreement", double_pole_integrators),
        ("Mann-Whitney exact vs permutation", mann_whitney_permutation),
        ("normalization round trip", normalization_round_trip),
        ("full-run bit determinism", run_determinism),
    ]
}
