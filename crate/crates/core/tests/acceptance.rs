//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Where a value is recomputed independently it is done with plain
//! floating-point 2×2 matrices built from `cos`/`sin`, not with the exact layer.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use pennyflip::coinstate::win_probability;
use pennyflip::dihedral::{closure, elements, isometries};
use pennyflip::games::{
    brute_force_extended_check, classify_strategies, decide_extended_game, enumerate_winning_strategies,
    is_winning_strategy, Decision,
};
use pennyflip::orbits::{orbit, orbit_of_basis, picard_fixed_set, stabilizer};
use pennyflip::unitary::{
    classify_winning_first_move, eigensystem_f, falsify_fixed_states, first_move_bases, phase_family, Complex2x2,
    Complex64, ComplexState2, TOLERANCE,
};
use pennyflip::{CoinState, Error, GameSpec, PlanarIsometry, Player};

type M = [[f64; 2]; 2];

fn rot(a: f64) -> M {
    [[a.cos(), -a.sin()], [a.sin(), a.cos()]]
}

fn refl(b: f64) -> M {
    [[(2.0 * b).cos(), (2.0 * b).sin()], [(2.0 * b).sin(), -(2.0 * b).cos()]]
}

fn mul(a: &M, b: &M) -> M {
    let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn apply(m: &M, v: (f64, f64)) -> (f64, f64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

/// Standard representation of `D_n` as float matrices: `R_{2πk/n}`, `S_{πk/n}`.
fn float_group(n: u32) -> Vec<M> {
    let nf = f64::from(n);
    (0..n)
        .map(|k| rot(TAU * f64::from(k) / nf))
        .chain((0..n).map(|k| refl(PI * f64::from(k) / nf)))
        .collect()
}

/// Projective angle in `[0, π)` of a real unit vector, rounded for set keys.
fn key(v: (f64, f64)) -> i64 {
    let phi = v.1.atan2(v.0).rem_euclid(PI);
    let k = (phi * 1e9).round() as i64;
    if k == (PI * 1e9).round() as i64 {
        0
    } else {
        k
    }
}

fn float_orbit(n: u32, v: (f64, f64)) -> BTreeSet<i64> {
    float_group(n).iter().map(|m| key(apply(m, v))).collect()
}

/// Q's winning pairs `(A₁, A₂)` in `D_n` by float matrices, as sorted
/// pairs of path keys `(A₁|0⟩, A₂A₁|0⟩)` with multiplicity.
fn float_winners(n: u32) -> Vec<(i64, i64)> {
    let group = float_group(n);
    let flip = refl(PI / 4.0);
    let id = rot(0.0);
    let mut out = Vec::new();
    for a1 in &group {
        for a2 in &group {
            let wins = [&id, &flip].iter().all(|p| {
                let v = apply(&mul(a2, &mul(p, a1)), (1.0, 0.0));
                (v.0 * v.0 - 1.0).abs() < 1e-9
            });
            if wins {
                let mid = apply(a1, (1.0, 0.0));
                out.push((key(mid), key(apply(a2, mid))));
            }
        }
    }
    out.sort();
    out
}

fn class_sizes(pairs: &[(i64, i64)]) -> Vec<(i64, usize)> {
    let mut sizes: Vec<(i64, usize)> = Vec::new();
    for (mid, _) in pairs {
        match sizes.iter_mut().find(|(m, _)| m == mid) {
            Some((_, c)) => *c += 1,
            None => sizes.push((*mid, 1)),
        }
    }
    sizes
}

fn c1() -> Result<String, String> {
    let pqg = GameSpec::pqg();
    let winners = enumerate_winning_strategies(&pqg, 8).map_err(|e| e.to_string())?;
    let classes = classify_strategies(&winners, CoinState::zero());
    let paths: Vec<String> = classes.iter().map(|c| c.path.to_string()).collect();
    let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    let oracle = float_winners(8);
    let plus = key((0.5f64.sqrt(), 0.5f64.sqrt()));
    let minus = key((-(0.5f64.sqrt()), 0.5f64.sqrt()));
    let oracle_ok = oracle.len() == 32 && class_sizes(&oracle) == [(plus, 16), (minus, 16)];
    let ok = winners.len() == 32
        && paths == ["(|0⟩, |+⟩, |0⟩)", "(|0⟩, |−⟩, |0⟩)"]
        && sizes == [16, 16]
        && oracle_ok;
    let detail = format!("{} winners, classes {:?} of sizes {:?}; float oracle {}", winners.len(), paths, sizes, oracle.len());
    if ok { Ok(detail) } else { Err(detail) }
}

fn c2() -> Result<String, String> {
    let pqg = GameSpec::pqg();
    let d8 = enumerate_winning_strategies(&pqg, 8).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [16, 24, 32] {
        let w = enumerate_winning_strategies(&pqg, n).map_err(|e| e.to_string())?;
        let classes = classify_strategies(&w, CoinState::zero());
        let same_classes = classes.len() == 2 && classes.iter().all(|c| c.members.len() == 16);
        let oracle = float_winners(n);
        let n_ok = w == d8 && same_classes && oracle.len() == 32;
        ok &= n_ok;
        notes.push(format!("D_{n}: {} (oracle {})", w.len(), oracle.len()));
    }
    if ok { Ok(notes.join(", ")) } else { Err(notes.join(", ")) }
}

fn c3() -> Result<String, String> {
    let pqg = GameSpec::pqg();
    let f = refl(PI / 4.0);
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 4, 5, 6, 7] {
        let oracle_contains = float_group(n)
            .iter()
            .any(|m| (0..2).all(|i| (0..2).all(|j| (m[i][j] - f[i][j]).abs() < 1e-12)));
        match enumerate_winning_strategies(&pqg, n) {
            Err(Error::FNotInGroup { .. }) => {
                ok &= !oracle_contains && n != 4;
                notes.push(format!("F ∉ D_{n}"));
            }
            Ok(w) => {
                ok &= oracle_contains && n == 4 && w.is_empty() && float_winners(4).is_empty();
                notes.push(format!("D_{n}: {} winners", w.len()));
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    if ok { Ok(notes.join(", ")) } else { Err(notes.join(", ")) }
}

fn c4() -> Result<String, String> {
    let mut bad = Vec::new();
    for n in 3..=64u32 {
        let ok = match picard_fixed_set(n) {
            Ok(fixed) => {
                let got: Vec<CoinState> = fixed.iter().copied().collect();
                if n % 8 == 0 {
                    got == [CoinState::plus(), CoinState::minus()]
                } else {
                    n % 4 == 0 && got.is_empty()
                }
            }
            Err(Error::FNotInGroup { .. }) => n % 4 != 0,
            Err(_) => false,
        };
        if !ok {
            bad.push(n);
        }
    }
    if bad.is_empty() { Ok("n = 3..64".into()) } else { Err(format!("mismatch at {bad:?}")) }
}

fn c5() -> Result<String, String> {
    let mut bad = Vec::new();
    for n in 3..=64u32 {
        let zero = orbit(n, CoinState::zero()).map_err(|e| e.to_string())?;
        let one = orbit(n, CoinState::one()).map_err(|e| e.to_string())?;
        let (fz, fo) = (float_orbit(n, (1.0, 0.0)), float_orbit(n, (0.0, 1.0)));
        let nn = n as usize;
        let shape = if n % 4 == 0 {
            zero == one && zero.len() == nn / 2
        } else if n % 2 == 0 {
            zero.is_disjoint(&one) && zero.len() == nn / 2 && one.len() == nn / 2
        } else {
            zero.is_disjoint(&one) && zero.len() == nn && one.len() == nn
        };
        let oracle = fz.len() == zero.len() && fo.len() == one.len() && (fz == fo) == (zero == one);
        let mut counting = true;
        for x in orbit_of_basis(n).map_err(|e| e.to_string())?.iter() {
            let o = orbit(n, *x).map_err(|e| e.to_string())?.len();
            let s = stabilizer(n, *x).map_err(|e| e.to_string())?.len();
            counting &= o * s == 2 * nn;
        }
        if !(shape && oracle && counting) {
            bad.push(n);
        }
    }
    if bad.is_empty() { Ok("n = 3..64".into()) } else { Err(format!("mismatch at {bad:?}")) }
}

fn c6() -> Result<String, String> {
    let plus = stabilizer(8, CoinState::plus()).map_err(|e| e.to_string())?.to_string();
    let zero = stabilizer(8, CoinState::zero()).map_err(|e| e.to_string())?.to_string();
    let detail = format!("D_8(|+⟩) = {plus}, D_8(|0⟩) = {zero}");
    if plus == "{I, R_π, F, S_{6π/8}}" && zero == "{I, R_π, S_0, S_{4π/8}}" { Ok(detail) } else { Err(detail) }
}

fn c7() -> Result<String, String> {
    let (z, o) = (CoinState::zero(), CoinState::one());
    let mut orders = 0;
    let mut games = 0;
    let mut bad = Vec::new();
    for len in 2..=9usize {
        for first in [Player::Q, Player::P] {
            orders += 1;
            let turns: Vec<Player> = (0..len).map(|i| if i % 2 == 0 { first } else { first.opponent() }).collect();
            for (initial, target) in [(z, z), (z, o), (o, z), (o, o)] {
                games += 1;
                let spec = GameSpec::with_turns(turns.clone(), initial, target).map_err(|e| e.to_string())?;
                let decided = decide_extended_game(&spec);
                let searched = brute_force_extended_check(&spec, 8, 9).map_err(|e| e.to_string())?;
                let witness_ok = match &decided {
                    Decision::QWins(s) => is_winning_strategy(&spec, s).map_err(|e| e.to_string())?,
                    _ => true,
                };
                let rule = decided.q_wins() == (turns[0] == Player::Q && turns[len - 1] == Player::Q);
                if decided.q_wins() != searched.q_wins() || searched.picard_wins() || !witness_ok || !rule {
                    bad.push(spec.to_string());
                }
            }
        }
    }
    let detail = format!("{orders} alternating turn orders × 4 basis combinations = {games} games");
    if bad.is_empty() { Ok(detail) } else { Err(format!("{detail}; failing {bad:?}")) }
}

fn c8() -> Result<String, String> {
    let ((l1, v1), (l2, v2)) = eigensystem_f();
    let f = Complex2x2::from_isometry(&PlanarIsometry::flip());
    let r1 = f.apply(&v1).distance(&v1.scale(Complex64::new(l1, 0.0)));
    let r2 = f.apply(&v2).distance(&v2.scale(Complex64::new(l2, 0.0)));
    let h = 0.5f64.sqrt();
    let plus = ComplexState2::new(Complex64::new(h, 0.0), Complex64::new(h, 0.0));
    let minus = ComplexState2::new(Complex64::new(h, 0.0), Complex64::new(-h, 0.0));
    let eigen_ok = l1 == 1.0
        && l2 == -1.0
        && r1 <= 1e-12
        && r2 <= 1e-12
        && v1.projective_distance(&plus) <= 1e-12
        && v2.projective_distance(&minus) <= 1e-12;

    let sampled = falsify_fixed_states(0, 10_000, TOLERANCE);

    let bases = first_move_bases();
    let mut worst: f64 = 0.0;
    let mut misses = 0;
    for i in 0..100 {
        let base = bases[i % bases.len()];
        let theta = i as f64 * TAU / 100.0;
        let class = classify_winning_first_move(&phase_family(&base, theta)).map_err(|e| e.to_string())?;
        match class.tag_for(&base) {
            Some(tag) => {
                let gap = (tag.theta - theta).abs();
                worst = worst.max(gap.min(TAU - gap));
            }
            None => misses += 1,
        }
    }
    let ok = eigen_ok && sampled.violations == 0 && misses == 0 && worst <= 1e-9;
    let detail = format!(
        "eigen residuals {r1:.1e}/{r2:.1e}; {} sampled states, {} violations; 100 grid points, {misses} misses, max θ error {worst:.1e}",
        sampled.samples, sampled.violations
    );
    if ok { Ok(detail) } else { Err(detail) }
}

fn c9() -> Result<String, String> {
    let mut pairs = 0;
    let mut ok = true;
    for n in [8u32, 12, 16] {
        let elems = elements(n).map_err(|e| e.to_string())?;
        for g in &elems {
            for h in &elems {
                pairs += 1;
                let lhs = g.compose(h).map_err(|e| e.to_string())?.represent();
                let rhs = g.represent().compose(&h.represent()).map_err(|e| e.to_string())?;
                ok &= lhs == rhs;
            }
        }
    }
    let generated = closure(&[PlanarIsometry::flip(), PlanarIsometry::hadamard()]).map_err(|e| e.to_string())?;
    let d8: BTreeSet<PlanarIsometry> = isometries(8).map_err(|e| e.to_string())?.into_iter().collect();
    ok &= generated.len() == 16 && generated.iter().copied().collect::<BTreeSet<_>>() == d8;
    let detail = format!("{pairs} pairs; ⟨F, H⟩ has {} elements", generated.len());
    if ok { Ok(detail) } else { Err(detail) }
}

fn c10() -> Result<String, String> {
    let half = win_probability(&CoinState::plus(), &CoinState::zero());
    let mut worst: f64 = 0.0;
    let mut states = 0;
    for n in 3..=64u32 {
        for x in orbit_of_basis(n).map_err(|e| e.to_string())?.iter() {
            states += 1;
            let total = win_probability(x, &CoinState::zero()) + win_probability(x, &CoinState::one());
            worst = worst.max((total - 1.0).abs());
        }
    }
    let detail = format!("P(|+⟩→|0⟩) = {half}; {states} states, max |sum − 1| = {worst:.1e}");
    if half == 0.5 && worst <= 1e-12 { Ok(detail) } else { Err(detail) }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String, String>); 10] = [
        ("D_8 enumeration: 32 winners in two classes of 16", c1),
        ("enlargement: D_16, D_24, D_32 give the same 32", c2),
        ("small groups: F ∉ D_3, D_5, D_6, D_7; D_4 has no winner", c3),
        ("fixed-set dichotomy for n in 3..64", c4),
        ("orbit structure and orbit-stabilizer for n in 3..64", c5),
        ("D_8 stabilizers of |+⟩ and |0⟩", c6),
        ("extended games up to 9 rounds", c7),
        ("U(2): F eigenpairs, sampled fixed states, phase families", c8),
        ("representation homomorphism and ⟨F, H⟩ closure", c9),
        ("probability identities", c10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}; {ms} ms)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name} ({detail}; {ms} ms)", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
