use kemeny_cli::format::{parse_instance, render};
use kemeny_cli::run::{counterpart, solve, verify_witness, Action, Decision, Problem};
use kemeny_cli::{generate_profile, Model};
use kemeny_core::fixtures::label_for;
use kemeny_core::{Candidates, ManipulationInstance, Profile, Ranking};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, m: usize, n: usize, partial: bool) -> ManipulationInstance {
    let model = if rng.random_bool(0.5) {
        Model::Uniform
    } else {
        Model::Mallows { phi: rng.random_range(0.1..=1.0) }
    };
    let mut profile = generate_profile(m, n, model, rng.random()).unwrap();
    if partial {
        profile = profile
            .iter()
            .map(|r| {
                let mut keep: Vec<usize> = (0..m).collect();
                keep.shuffle(rng);
                keep.truncate(rng.random_range(0..=m));
                kemeny_core::restrict(r, &keep).unwrap()
            })
            .collect::<Profile>();
    }
    let mut x: Vec<usize> = (0..m).collect();
    x.shuffle(rng);
    let d_max = (n * m * m.saturating_sub(1) / 2) as u64;
    ManipulationInstance::new(
        Candidates::new((0..m).map(label_for)).unwrap(),
        profile,
        Ranking::new(x).unwrap(),
        (0..n).map(|_| rng.random_range(0..=4)).collect(),
        (0..m).map(|_| rng.random_range(0..=4)).collect(),
        rng.random_range(0..=8),
        rng.random_range(0..=d_max),
    )
    .unwrap()
}

#[test]
fn render_parse_round_trip_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let m = rng.random_range(1..=9);
        let n = rng.random_range(0..=7);
        let inst = random_instance(&mut rng, m, n, i % 2 == 0);
        let text = render(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst, "{text}");
    }
}

#[test]
fn every_action_agrees_with_its_counterpart() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = std::collections::HashMap::new();
    for round in 0..1500 {
        let m = rng.random_range(1..=5);
        let n = rng.random_range(0..=4);
        let mut inst = random_instance(&mut rng, m, n, false);
        if round % 3 == 0 {
            inst.k = 0;
        }
        if round % 3 == 1 && n >= 1 {
            inst = random_instance(&mut rng, m, 1, false);
        }
        let partial = random_instance(&mut rng, m, n, true);
        for action in Action::ALL {
            let inst = if action.problem() == Problem::Pks { &partial } else { &inst };
            let Ok(ours) = solve(action, inst, None) else {
                assert!(matches!(action, Action::CdelK0 | Action::CdelSingle), "{action}");
                continue;
            };
            verify_witness(action, inst, &ours).unwrap_or_else(|e| panic!("{action}: {e}"));
            let Some(other) = counterpart(action, inst) else { continue };
            let theirs = solve(other, inst, None).unwrap();
            assert_eq!(
                (ours.decision, ours.optimum),
                (theirs.decision, theirs.optimum),
                "{action} vs {other} on\n{}",
                render(inst)
            );
            if ours.decision == Decision::Yes {
                *compared.entry(action.to_string()).or_insert(0) += 1;
            }
        }
    }
    for action in Action::ALL {
        assert!(compared.get(&action.to_string()).copied().unwrap_or(0) > 20, "{action}: {compared:?}");
    }
}
