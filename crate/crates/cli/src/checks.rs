//! The `verify-all` suite. Each check recomputes one claim about the game
//! from the library and reports pass, fail or skipped with its evidence.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::time::Instant;

use pennyflip::dihedral::{closure, elements, isometries, verify_presentation, PlanarIsometry};
use pennyflip::games::{
    brute_force_extended_check, classify_strategies, decide_extended_game, enumerate_winning_strategies,
    is_dominant, is_winning_strategy, picard_strategies, q_pool, synthesize_by_algorithm1,
    verify_characteristic_properties, Decision,
};
use pennyflip::orbits::{orbit, orbit_case, orbit_of_basis, picard_fixed_set, stabilizer, OrbitCase};
use pennyflip::unitary::{
    classify_winning_first_move, eigensystem_f, falsify_first_moves, falsify_fixed_states, first_move_bases,
    phase_family, Complex2x2, Complex64, ComplexState2, ALGEBRAIC_TOLERANCE,
};
use pennyflip::coinstate::win_probability;
use pennyflip::{CoinState, Error, GameSpec, Player, Strategy};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::Config;
use crate::report::{Status, VerificationReport};

type Outcome = Result<(Status, Value), Error>;

pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    run: fn(&Config) -> Outcome,
}

pub fn all_checks() -> Vec<Check> {
    vec![
        Check {
            id: "c01-d8-enumeration",
            claim: "Q has exactly 32 winning strategies for (Q, P, Q) in D_8, in two classes of 16 with paths (|0⟩, |+⟩, |0⟩) and (|0⟩, |−⟩, |0⟩)",
            run: d8_enumeration,
        },
        Check {
            id: "c02-enlargement",
            claim: "D_16, D_24 and D_32 give the same 32 winning strategies and the same two classes as D_8",
            run: enlargement,
        },
        Check {
            id: "c03-small-groups",
            claim: "F ∉ D_3, D_5, D_6, D_7; F ∈ D_4 but Q has no winning strategy there",
            run: small_groups,
        },
        Check {
            id: "c04-fixed-set",
            claim: "Fix({I, F}) over the basis orbit is {|+⟩, |−⟩} iff 8 | n, otherwise empty or F ∉ D_n",
            run: fixed_set_dichotomy,
        },
        Check {
            id: "c05-orbits",
            claim: "Basis orbits: one orbit of n/2 states when 4 | n, two disjoint orbits of n/2 for other even n, two of n for odd n; |orbit|·|stabilizer| = 2n",
            run: orbit_structure,
        },
        Check {
            id: "c06-d8-stabilizers",
            claim: "In D_8 the stabilizer of |+⟩ is {I, R_π, F, S_{6π/8}} and that of |0⟩ is {I, R_π, S_0, S_{4π/8}}",
            run: d8_stabilizers,
        },
        Check {
            id: "c07-extended-games",
            claim: "Q has a winning strategy iff Q moves first and last; Picard never has one; (H, I, …, I, H) and (H, I, …, I, FH) win",
            run: extended_games,
        },
        Check {
            id: "c08a-f-eigensystem",
            claim: "F has eigenpairs (+1, |+⟩) and (−1, |−⟩)",
            run: f_eigensystem,
        },
        Check {
            id: "c08b-fixed-states-sampled",
            claim: "A sampled state is fixed by F up to phase iff it is |+⟩ or |−⟩ up to phase",
            run: fixed_states_sampled,
        },
        Check {
            id: "c08c-first-moves-sampled",
            claim: "Sampled unitaries almost never send |0⟩ to |±⟩, and any that do leave a state fixed by F",
            run: first_moves_sampled,
        },
        Check {
            id: "c08d-phase-families",
            claim: "Every e^{iθ}·A for a winning first move A is classified back to A with θ recovered",
            run: phase_family_grid,
        },
        Check {
            id: "c09-representation",
            claim: "The standard representation is a homomorphism on D_8, D_12, D_16 and ⟨F, H⟩ has 16 elements",
            run: representation,
        },
        Check {
            id: "c10-probabilities",
            claim: "P(|+⟩ → |0⟩) = 1/2 exactly and P(|0⟩) + P(|1⟩) = 1 on every basis-orbit state",
            run: probabilities,
        },
        Check {
            id: "c11-synthesis",
            claim: "Building strategies through Fix({I, F}) recovers exactly the enumerated winners; D_12 has nothing to build on",
            run: synthesis,
        },
        Check {
            id: "c12-characteristic",
            claim: "Every D_8 winner satisfies A₂IA₁|0⟩ = A₂FA₁|0⟩ = |0⟩ with A₁|0⟩ fixed by F",
            run: characteristic,
        },
        Check {
            id: "c13-dominance",
            claim: "(H, H) is dominant for Q in D_8; no Picard strategy is dominant in D_4",
            run: dominance,
        },
        Check {
            id: "c14-presentations",
            claim: "Each D_n is generated by two reflections s, t with s² = t² = (st)^n = 1",
            run: presentations,
        },
    ]
}

/// Runs the checks whose id starts with one of `only` (all when empty), in
/// parallel, and returns the reports in id order.
pub fn run_checks(config: &Config, only: &[String], timing: bool) -> Vec<VerificationReport> {
    let selected: Vec<Check> = all_checks()
        .into_iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| c.id.starts_with(o.as_str())))
        .collect();
    let mut reports: Vec<VerificationReport> = selected
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let (status, details) = match (check.run)(config) {
                Ok(outcome) => outcome,
                Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
            };
            VerificationReport {
                check_id: check.id.to_string(),
                claim_ref: check.claim.to_string(),
                status,
                details,
                elapsed_ms: timing.then(|| start.elapsed().as_millis() as u64),
            }
        })
        .collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    reports
}

fn names<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn class_summary(winners: &[Strategy]) -> Vec<Value> {
    classify_strategies(winners, CoinState::zero())
        .iter()
        .map(|c| json!({ "path": c.path.to_string(), "size": c.members.len() }))
        .collect()
}

fn d8_enumeration(_: &Config) -> Outcome {
    let winners = enumerate_winning_strategies(&GameSpec::pqg(), 8)?;
    let classes = classify_strategies(&winners, CoinState::zero());
    let paths = names(classes.iter().map(|c| &c.path));
    let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    let ok = winners.len() == 32
        && paths == ["(|0⟩, |+⟩, |0⟩)", "(|0⟩, |−⟩, |0⟩)"]
        && sizes == [16, 16];
    Ok((Status::from_bool(ok), json!({ "count": winners.len(), "classes": class_summary(&winners) })))
}

fn enlargement(_: &Config) -> Outcome {
    let pqg = GameSpec::pqg();
    let base = enumerate_winning_strategies(&pqg, 8)?;
    let mut ok = true;
    let mut rows = Vec::new();
    for n in [16, 24, 32] {
        let winners = enumerate_winning_strategies(&pqg, n)?;
        let same = winners == base;
        ok &= same;
        rows.push(json!({ "n": n, "count": winners.len(), "identicalToD8": same, "classes": class_summary(&winners) }));
    }
    Ok((Status::from_bool(ok), json!({ "groups": rows })))
}

fn small_groups(_: &Config) -> Outcome {
    let pqg = GameSpec::pqg();
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 3..=7 {
        match enumerate_winning_strategies(&pqg, n) {
            Err(Error::FNotInGroup { .. }) => {
                ok &= n != 4;
                rows.push(json!({ "n": n, "containsF": false }));
            }
            Ok(winners) => {
                let decision = brute_force_extended_check(&pqg, n, 3)?;
                ok &= n == 4 && winners.is_empty() && decision == Decision::NoWinningStrategyForEither;
                rows.push(json!({ "n": n, "containsF": true, "qWinningStrategies": winners.len(), "decision": decision.label() }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((Status::from_bool(ok), json!({ "groups": rows })))
}

fn fixed_set_dichotomy(config: &Config) -> Outcome {
    let expected: BTreeSet<CoinState> = [CoinState::plus(), CoinState::minus()].into();
    let mut bad = Vec::new();
    let (mut full, mut empty, mut absent) = (0, 0, 0);
    for n in config.orders() {
        let ok = match picard_fixed_set(n) {
            Ok(fixed) if n % 8 == 0 => {
                full += 1;
                fixed.iter().copied().collect::<BTreeSet<_>>() == expected
            }
            Ok(fixed) => {
                empty += 1;
                n % 4 == 0 && fixed.is_empty()
            }
            Err(Error::FNotInGroup { .. }) => {
                absent += 1;
                n % 4 != 0
            }
            Err(e) => return Err(e),
        };
        if !ok {
            bad.push(n);
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        json!({ "plusMinus": full, "empty": empty, "fAbsent": absent, "mismatches": bad }),
    ))
}

fn orbit_structure(config: &Config) -> Outcome {
    let mut bad = Vec::new();
    for n in config.orders() {
        let zero = orbit(n, CoinState::zero())?;
        let one = orbit(n, CoinState::one())?;
        let half = n as usize / 2;
        let shape_ok = match orbit_case(n) {
            OrbitCase::FourMultiple => zero == one && zero.len() == half,
            OrbitCase::EvenNotFourMultiple => zero.is_disjoint(&one) && zero.len() == half && one.len() == half,
            OrbitCase::Odd => zero.is_disjoint(&one) && zero.len() == n as usize && one.len() == n as usize,
        };
        let mut counting_ok = true;
        for x in orbit_of_basis(n)?.iter() {
            counting_ok &= orbit(n, *x)?.len() * stabilizer(n, *x)?.len() == 2 * n as usize;
        }
        if !(shape_ok && counting_ok) {
            bad.push(n);
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        json!({ "range": [config.n_range.0, config.n_range.1], "mismatches": bad }),
    ))
}

fn d8_stabilizers(_: &Config) -> Outcome {
    let plus = stabilizer(8, CoinState::plus())?.to_string();
    let zero = stabilizer(8, CoinState::zero())?.to_string();
    let ok = plus == "{I, R_π, F, S_{6π/8}}" && zero == "{I, R_π, S_0, S_{4π/8}}";
    Ok((Status::from_bool(ok), json!({ "plus": plus, "zero": zero })))
}

fn alternating_orders(max_len: usize) -> Vec<Vec<Player>> {
    let mut out = Vec::new();
    for len in 2..=max_len {
        for first in [Player::Q, Player::P] {
            out.push(
                (0..len)
                    .map(|i| if i % 2 == 0 { first } else { first.opponent() })
                    .collect(),
            );
        }
    }
    out
}

fn extended_games(config: &Config) -> Outcome {
    let (z, o) = (CoinState::zero(), CoinState::one());
    let mut games = 0;
    let mut bad = Vec::new();
    for turns in alternating_orders(config.max_rounds) {
        for (initial, target) in [(z, z), (z, o), (o, z), (o, o)] {
            let spec = GameSpec::with_turns(turns.clone(), initial, target)?;
            games += 1;
            let decided = decide_extended_game(&spec);
            let searched = brute_force_extended_check(&spec, 8, config.max_rounds)?;
            let witness_ok = match &decided {
                Decision::QWins(sigma) => is_winning_strategy(&spec, sigma)?,
                _ => true,
            };
            if decided.q_wins() != searched.q_wins() || searched.picard_wins() || !witness_ok {
                bad.push(spec.to_string());
            }
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        json!({ "turnOrders": alternating_orders(config.max_rounds).len(), "games": games, "mismatches": bad }),
    ))
}

fn f_eigensystem(_: &Config) -> Outcome {
    let ((l1, v1), (l2, v2)) = eigensystem_f();
    let f = Complex2x2::from_isometry(&PlanarIsometry::flip());
    let residual = |l: f64, v: &ComplexState2| f.apply(v).distance(&v.scale(Complex64::new(l, 0.0)));
    let (r1, r2) = (residual(l1, &v1), residual(l2, &v2));
    let plus = ComplexState2::from_coin(&CoinState::plus());
    let minus = ComplexState2::from_coin(&CoinState::minus());
    let ok = l1 == 1.0
        && l2 == -1.0
        && r1 <= ALGEBRAIC_TOLERANCE
        && r2 <= ALGEBRAIC_TOLERANCE
        && v1.projective_distance(&plus) <= ALGEBRAIC_TOLERANCE
        && v2.projective_distance(&minus) <= ALGEBRAIC_TOLERANCE;
    Ok((Status::from_bool(ok), json!({ "eigenvalues": [l1, l2], "residuals": [r1, r2] })))
}

fn fixed_states_sampled(config: &Config) -> Outcome {
    if config.samples == 0 {
        return Ok((Status::Skipped, json!({ "samples": 0 })));
    }
    let report = falsify_fixed_states(config.seed, config.samples, config.tolerance);
    Ok((Status::from_bool(report.violations == 0), serde_json::to_value(report).expect("plain data")))
}

fn first_moves_sampled(config: &Config) -> Outcome {
    if config.samples == 0 {
        return Ok((Status::Skipped, json!({ "samples": 0 })));
    }
    let report = falsify_first_moves(config.seed, config.samples, config.tolerance);
    let ok = report.violations == 0 && report.max_residual <= config.tolerance;
    Ok((Status::from_bool(ok), serde_json::to_value(report).expect("plain data")))
}

fn phase_family_grid(_: &Config) -> Outcome {
    let bases = first_move_bases();
    let mut worst: f64 = 0.0;
    let mut misses = Vec::new();
    for i in 0..100 {
        let base = bases[i % bases.len()];
        let theta = i as f64 * TAU / 100.0;
        let class = classify_winning_first_move(&phase_family(&base, theta))?;
        match class.tag_for(&base) {
            Some(tag) => {
                let gap = (tag.theta - theta).abs();
                worst = worst.max(gap.min(TAU - gap));
            }
            None => misses.push(format!("{base} at θ={theta}")),
        }
    }
    let ok = misses.is_empty() && worst <= 1e-9;
    Ok((Status::from_bool(ok), json!({ "points": 100, "maxThetaError": worst, "misses": misses })))
}

fn representation(_: &Config) -> Outcome {
    let mut pairs = 0;
    let mut ok = true;
    for n in [8, 12, 16] {
        let elems = elements(n)?;
        for g in &elems {
            for h in &elems {
                pairs += 1;
                ok &= g.compose(h)?.represent() == g.represent().compose(&h.represent())?;
            }
        }
    }
    let generated = closure(&[PlanarIsometry::flip(), PlanarIsometry::hadamard()])?;
    let same_as_d8 = generated.iter().copied().collect::<BTreeSet<_>>() == isometries(8)?.into_iter().collect();
    ok &= generated.len() == 16 && same_as_d8;
    Ok((
        Status::from_bool(ok),
        json!({ "pairsChecked": pairs, "closureSize": generated.len(), "closureIsD8": same_as_d8 }),
    ))
}

fn probabilities(config: &Config) -> Outcome {
    let half = win_probability(&CoinState::plus(), &CoinState::zero());
    let mut worst: f64 = 0.0;
    let mut states = 0;
    for n in config.orders() {
        for x in orbit_of_basis(n)?.iter() {
            states += 1;
            let total = win_probability(x, &CoinState::zero()) + win_probability(x, &CoinState::one());
            worst = worst.max((total - 1.0).abs());
        }
    }
    let ok = half == 0.5 && worst <= 1e-12;
    Ok((Status::from_bool(ok), json!({ "plusToZero": half, "statesChecked": states, "maxSumError": worst })))
}

fn synthesis(_: &Config) -> Outcome {
    let pqg = GameSpec::pqg();
    let mut ok = true;
    let mut rows = Vec::new();
    for n in [8, 16, 24, 32] {
        let built = synthesize_by_algorithm1(&pqg, n)?;
        let same = built == enumerate_winning_strategies(&pqg, n)?;
        ok &= same;
        rows.push(json!({ "n": n, "count": built.len(), "matchesEnumeration": same }));
    }
    let d12_empty = matches!(synthesize_by_algorithm1(&pqg, 12), Err(Error::EmptyFixedSet { .. }));
    ok &= d12_empty;
    Ok((Status::from_bool(ok), json!({ "groups": rows, "d12EmptyFixedSet": d12_empty })))
}

fn characteristic(_: &Config) -> Outcome {
    let pqg = GameSpec::pqg();
    let winners = enumerate_winning_strategies(&pqg, 8)?;
    let mut failing = Vec::new();
    for w in &winners {
        if !verify_characteristic_properties(&pqg, w)?.holds() {
            failing.push(w.to_string());
        }
    }
    Ok((
        Status::from_bool(failing.is_empty() && !winners.is_empty()),
        json!({ "strategies": winners.len(), "failing": failing }),
    ))
}

fn dominance(_: &Config) -> Outcome {
    let pqg = GameSpec::pqg();
    let picard = [PlanarIsometry::identity(), PlanarIsometry::flip()];
    let hh = Strategy::q(vec![PlanarIsometry::hadamard(); 2]);
    let hh_dominant = is_dominant(&pqg, &hh, &q_pool(8)?, &picard)?;
    let idle_dominant = is_dominant(&pqg, &Strategy::q(vec![PlanarIsometry::identity(); 2]), &q_pool(8)?, &picard)?;
    let d4 = q_pool(4)?;
    let mut picard_dominant = Vec::new();
    for sigma in picard_strategies(&pqg) {
        if is_dominant(&pqg, &sigma, &picard, &d4)? {
            picard_dominant.push(sigma.to_string());
        }
    }
    let ok = hh_dominant && !idle_dominant && picard_dominant.is_empty();
    Ok((
        Status::from_bool(ok),
        json!({ "hhDominant": hh_dominant, "iiDominant": idle_dominant, "dominantPicardInD4": picard_dominant }),
    ))
}

fn presentations(config: &Config) -> Outcome {
    let mut bad = Vec::new();
    for n in config.orders() {
        if !verify_presentation(n)? {
            bad.push(n);
        }
    }
    Ok((Status::from_bool(bad.is_empty()), json!({ "range": [config.n_range.0, config.n_range.1], "failing": bad })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<&str> = all_checks().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn no_samples_skips_sampling_only() {
        let config = Config {
            samples: 0,
            n_range: (3, 16),
            max_rounds: 5,
            ..Config::default()
        };
        let reports = run_checks(&config, &[], false);
        for r in &reports {
            let sampled = r.check_id.contains("sampled");
            assert_eq!(r.status == Status::Skipped, sampled, "{}", r.check_id);
            if !sampled {
                assert_eq!(r.status, Status::Pass, "{}: {}", r.check_id, r.details);
            }
        }
    }
}
