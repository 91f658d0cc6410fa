//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails, except the ones listed in
//! `KNOWN_UNATTAINABLE`, whose failure is the expected, documented outcome.

mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use support::*;
use ultrazero::archipelago::{
    ball_audit, build_archipelago, fingerprint_compare, island_profile, BallShape, FingerprintVerdict, ProfileEntry,
};
use ultrazero::gen::{
    metrics_over_alphabet, random_3n_ultrametric, random_line, random_metric, random_order, random_subset,
    random_ultrametric,
};
use ultrazero::groups::{
    group_ball, group_isometric_embedding, m0_distortion_check, protasov_equivalent, CyclicSumSpec, GroupElement,
    Multiplicity,
};
use ultrazero::lomega::{embed_3n_valued_in_order, embed_ultrametric};
use ultrazero::metric::{is_ultrametric, PointedSpace};
use ultrazero::pipeline::embed_universal;
use ultrazero::retract::{default_delta, lipschitz_retraction, tail_sequence_example};
use ultrazero::scale::{chain_minimax_oracle, dim0_certificate, subdominant_ultrametric, verify_scale_bounds};
use ultrazero::{MetricSpace, Rational};

/// Criteria that cannot hold as stated; see the notes at each.
const KNOWN_UNATTAINABLE: &[u32] = &[6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn mixed_space(rng: &mut impl Rng, n: usize, k: usize) -> MetricSpace {
    match k % 3 {
        0 | 1 => random_metric(rng, n, 9),
        _ => random_line(rng, n, 3 * n as i64 + 2),
    }
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let mut pairs = 0usize;
    let mut spaces: Vec<MetricSpace> = (0..500)
        .map(|k| {
            let n = rng.gen_range(1..=7);
            mixed_space(&mut rng, n, k)
        })
        .collect();
    let random = spaces.len();
    let alphabet = [int(1), int(2), int(3)];
    for n in 1..=5 {
        spaces.extend(metrics_over_alphabet(n, &alphabet));
    }
    for s in &spaces {
        let rho = subdominant_ultrametric(s).rho;
        let closure = minimax_closure(s);
        for (x, z) in s.pairs() {
            let oracle = chain_minimax_oracle(s, x, z, 8).expect("at most 7 points");
            if rho.d(x, z) != &oracle || oracle != closure[x][z] {
                return outcome(false, format!("mismatch at ({x},{z}) on {:?}", s.rows()));
            }
            pairs += 1;
        }
    }
    outcome(
        true,
        format!("{random} random + {} alphabet spaces, {pairs} pairs", spaces.len() - random),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut pairs = 0usize;
    for k in 0..200 {
        let n = rng.gen_range(2..=30);
        let s = mixed_space(&mut rng, n, k);
        let res = subdominant_ultrametric(&s);
        let cert = dim0_certificate(&s);
        let (m, table) = certificate_oracle(&s);
        if cert.m != m || cert.table != table {
            return outcome(false, format!("certificate differs from oracle on space {k}"));
        }
        let report = verify_scale_bounds(&s, &res, &cert).expect("matching inputs");
        if !report.pass {
            return outcome(false, format!("space {k}: {:?}", report.violations[0]));
        }
        for (x, y) in s.pairs() {
            let d = s.d(x, y);
            let rho = res.rho.d(x, y);
            let inv = table.iter().find(|(_, dd)| dd >= d).expect("D reaches the diameter").0.clone();
            let ok = d.clone() / (int(2) * m.clone()) <= *rho && rho <= d && inv / int(2) <= *rho;
            if !ok {
                return outcome(false, format!("space {k}: pair ({x},{y}) breaks a bound"));
            }
            pairs += 1;
        }
    }
    outcome(true, format!("200 spaces, {pairs} pairs, both bounds, zero violations"))
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let (mut ultra, mut not_ultra) = (0, 0);
    for k in 0..500 {
        let n = rng.gen_range(2..=12);
        let s: MetricSpace = if k % 2 == 0 {
            random_metric(&mut rng, n, 9)
        } else {
            random_ultrametric(&mut rng, n)
        };
        let is_ultra = ultrametric_by_triangles(&s);
        let m_is_one = dim0_certificate(&s).m == int(1);
        if is_ultra != m_is_one {
            return outcome(false, format!("space {k}: ultrametric={is_ultra} but m=1 is {m_is_one}"));
        }
        if is_ultra {
            ultra += 1;
        } else {
            not_ultra += 1;
        }
    }
    outcome(
        ultra > 0 && not_ultra > 0,
        format!("{ultra} ultrametric with m=1, {not_ultra} others with m>1"),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let mut pairs = 0usize;
    for k in 0..200 {
        let n = rng.gen_range(1..=64);
        let lowest = rng.gen_range(-3..=0);
        let spread = rng.gen_range(1..=6);
        let s: MetricSpace = random_3n_ultrametric(&mut rng, n, lowest, spread);
        for _ in 0..5 {
            let order = random_order(&mut rng, n);
            let e = match embed_3n_valued_in_order(&s, &order) {
                Ok(e) => e,
                Err(err) => return outcome(false, format!("space {k}: {err}")),
            };
            for (x, y) in s.pairs() {
                if mu_oracle(&e.images[x], &e.images[y]) != *s.d(x, y) {
                    return outcome(false, format!("space {k}: pair ({x},{y}) not isometric"));
                }
                pairs += 1;
            }
        }
    }
    outcome(true, format!("200 spaces x 5 orders, {pairs} pairs exact"))
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut ultra_pairs = 0usize;
    for k in 0..200 {
        let n = rng.gen_range(2..=40);
        let s: MetricSpace = random_ultrametric(&mut rng, n);
        let e = match embed_ultrametric(&s) {
            Ok(e) => e,
            Err(err) => return outcome(false, format!("ultrametric {k}: {err}")),
        };
        for (x, y) in s.pairs() {
            let d = s.d(x, y);
            let m = mu_oracle(&e.images[x], &e.images[y]);
            if !(*d <= m && m < int(3) * d.clone()) {
                return outcome(false, format!("ultrametric {k}: pair ({x},{y}) outside [d, 3d)"));
            }
            ultra_pairs += 1;
        }
    }
    let mut general_pairs = 0usize;
    for k in 0..100 {
        let n = rng.gen_range(2..=25);
        let s = mixed_space(&mut rng, n, k);
        let (m, _) = certificate_oracle(&s);
        let u = match embed_universal(&s) {
            Ok(u) => u,
            Err(err) => return outcome(false, format!("general {k}: {err}")),
        };
        for (x, y) in s.pairs() {
            let d = s.d(x, y);
            let mu = mu_oracle(&u.inner.images[x], &u.inner.images[y]);
            if !(*d <= mu && mu <= int(6) * m.clone() * d.clone()) {
                return outcome(false, format!("general {k}: pair ({x},{y}) outside [d, 6md]"));
            }
            general_pairs += 1;
        }
        if !u.audit.pass {
            return outcome(false, format!("general {k}: module audit failed"));
        }
    }
    outcome(
        true,
        format!("{ultra_pairs} ultrametric pairs in [d,3d); {general_pairs} general pairs in [d,6md]"),
    )
}

/// Part (a), random retractions, holds. Part (b) asks brute force to find no
/// 1-Lipschitz retraction on finite truncations of the tail sequence; but
/// sending `x_1` to the last tail point `x_n` is 1-Lipschitz, since
/// `d(x_n, x_k) = 1 + 1/k = d(x_1, x_k)` for every `k < n`. Only the
/// infinite sequence lacks one. The check is run as stated and fails.
fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let lambdas = [q(3, 2), int(2), int(4)];
    let mut maps = 0;
    for k in 0..200 {
        let n = rng.gen_range(1..=100);
        let s: MetricSpace = random_ultrametric(&mut rng, n);
        let subset = random_subset(&mut rng, n);
        let base = rng.gen_range(0..n);
        let lambda = &lambdas[k % 3];
        let delta = default_delta(lambda).expect("lambda > 1");
        let space = PointedSpace::new(s.clone(), base).expect("base in range");
        let r = match lipschitz_retraction(&space, &subset, lambda, &delta) {
            Ok(r) => r,
            Err(err) => return outcome(false, format!("6a space {k}: {err}")),
        };
        if subset.iter().any(|&a| r.assignment[a] != a) {
            return outcome(false, format!("6a space {k}: subset not fixed"));
        }
        if lipschitz_oracle(&s, &r.assignment) > *lambda {
            return outcome(false, format!("6a space {k}: constant exceeds {lambda}"));
        }
        maps += 1;
    }
    let part_a = format!("6a {maps}/200 retractions fix A and are lambda-Lipschitz");

    let mut module_ok = true;
    let mut found_one_lipschitz = Vec::new();
    for n in 2..=6 {
        let (space, tail) = tail_sequence_example::<Rational>(n);
        match lipschitz_retraction(&space, &tail, &q(3, 2), &q(6, 5)) {
            Ok(r) => module_ok &= lipschitz_oracle(space.space(), &r.assignment) <= q(3, 2) && r.fixes_subset(),
            Err(_) => module_ok = false,
        }
        let (best, map) = best_retraction_oracle(space.space(), &tail);
        if best <= int(1) {
            found_one_lipschitz.push(format!("n={n}: x1->{} has constant {best}", space.space().label(map[0])));
        }
    }
    let (ten, tail) = tail_sequence_example::<Rational>(10);
    module_ok &= lipschitz_retraction(&ten, &tail, &q(3, 2), &q(6, 5))
        .map(|r| lipschitz_oracle(ten.space(), &r.assignment) <= q(3, 2))
        .unwrap_or(false);
    let part_b_holds = found_one_lipschitz.is_empty();
    outcome(
        part_b_holds && module_ok,
        format!(
            "{part_a}; 6b module lambda=3/2 retraction {}; brute force expected no 1-Lipschitz retraction but found: {}",
            if module_ok { "passes" } else { "FAILS" },
            if part_b_holds { "none".to_string() } else { found_one_lipschitz.join(", ") }
        ),
    )
}

fn add_digits(orders: &[u64], x: &[u64], y: &[u64]) -> Vec<u64> {
    (0..orders.len())
        .map(|i| (x.get(i).copied().unwrap_or(0) + y.get(i).copied().unwrap_or(0)) % orders[i])
        .collect()
}

fn criterion_7() -> Outcome {
    use Multiplicity::{Finite, Infinite};
    let specs = vec![
        CyclicSumSpec::finite(&[2, 3, 4, 5]).unwrap(),
        CyclicSumSpec::finite(&[8, 9]).unwrap(),
        CyclicSumSpec::finite(&[9, 8, 2, 3]).unwrap(),
        CyclicSumSpec::finite(&[5, 4, 3, 2]).unwrap(),
        CyclicSumSpec::finite(&[4, 9, 3, 8]).unwrap(),
        CyclicSumSpec::new(vec![(2, Infinite)]).unwrap(),
        CyclicSumSpec::new(vec![(3, Finite(2)), (5, Infinite)]).unwrap(),
        CyclicSumSpec::new(vec![(2, Infinite), (9, Infinite)]).unwrap(),
        CyclicSumSpec::new(vec![(8, Finite(1)), (4, Infinite), (5, Finite(1))]).unwrap(),
    ];
    let mut rng = rng(7);
    let mut balls = 0;
    let mut triples = 0;
    for spec in &specs {
        for depth in 1..=4 {
            let Ok(ball) = group_ball::<Rational>(spec, depth) else {
                continue;
            };
            balls += 1;
            let s = &ball.space;
            if !is_ultrametric(s).verdict || (s.len() <= 120 && !ultrametric_by_triangles(s)) {
                return outcome(false, format!("{spec} depth {depth}: not ultrametric"));
            }
            let elems: Vec<Vec<u64>> = ball.elements.iter().map(|e| e.digits().to_vec()).collect();
            for (i, j) in s.pairs() {
                if *s.d(i, j) != int(d_filtration_oracle(&elems[i], &elems[j]) as i64) {
                    return outcome(false, format!("{spec} depth {depth}: distance formula"));
                }
            }
            for _ in 0..1000 {
                let [g, x, y] = [0; 3].map(|_| rng.gen_range(0..s.len()));
                let gx = GroupElement::new(add_digits(&ball.orders, &elems[g], &elems[x]));
                let gy = GroupElement::new(add_digits(&ball.orders, &elems[g], &elems[y]));
                let (a, b) = (ball.index_of(&gx).unwrap(), ball.index_of(&gy).unwrap());
                if s.d(a, b) != s.d(x, y) {
                    return outcome(false, format!("{spec} depth {depth}: not left invariant"));
                }
                triples += 1;
            }
        }
    }
    outcome(true, format!("{balls} balls over {} specs, {triples} left-invariance triples", specs.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let mut equal_pairs = 0;
    let mut audited = 0usize;
    for k in 0..20 {
        let r = rng.gen_range(1..=3);
        let a: Vec<u64> = (0..r).map(|_| rng.gen_range(2..=6)).collect();
        let b: Vec<u64> = if k % 4 == 0 {
            a.clone()
        } else {
            a.iter().map(|&x| x + rng.gen_range(0..=2)).collect()
        };
        let g = CyclicSumSpec::finite(&a).unwrap();
        let h = CyclicSumSpec::finite(&b).unwrap();
        let emb = match group_isometric_embedding::<Rational>(&g, &h, r, None) {
            Ok(e) => e,
            Err(err) => return outcome(false, format!("pair {k}: {err}")),
        };
        let src: Vec<&[u64]> = emb.source.elements.iter().map(|e| e.digits()).collect();
        let tgt: Vec<&[u64]> = emb.target.elements.iter().map(|e| e.digits()).collect();
        let n = src.len();
        for x in 0..n {
            for y in 0..n {
                let before = d_filtration_oracle(src[x], src[y]);
                let after = d_filtration_oracle(tgt[emb.assignment[x]], tgt[emb.assignment[y]]);
                if before != after {
                    return outcome(false, format!("pair {k}: ({x},{y}) not preserved"));
                }
                audited += 1;
            }
        }
        if !tgt[emb.assignment[src.iter().position(|d| d.is_empty()).unwrap()]].is_empty() {
            return outcome(false, format!("pair {k}: identity not fixed"));
        }
        if a == b {
            let image: BTreeSet<usize> = emb.assignment.iter().copied().collect();
            if !(emb.bijective && image.len() == emb.target.elements.len()) {
                return outcome(false, format!("pair {k}: equal indices but not a bijection"));
            }
            equal_pairs += 1;
        }
    }
    outcome(
        true,
        format!("20 pairs, {audited} ordered pairs audited, {equal_pairs} equal-index pairs bijective"),
    )
}

fn criterion_9() -> Outcome {
    let report = m0_distortion_check(7).expect("length 7 is allowed");
    let elems: Vec<Vec<u64>> = (0u64..128)
        .map(|m| {
            let mut v: Vec<u64> = (0..7).map(|i| (m >> i) & 1).collect();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        })
        .collect();
    let images: Vec<u128> = elems.iter().map(|p| cantor_oracle(p)).collect();
    let digits_ok = images.iter().all(|&v| {
        let mut v = v;
        while v > 0 {
            if v % 3 == 1 {
                return false;
            }
            v /= 3;
        }
        true
    });
    let mut pairs = 0;
    let mut sharp = true;
    let mut injective = true;
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let n = d_filtration_oracle(&elems[i], &elems[j]) as u32;
            let gap = images[i].abs_diff(images[j]);
            injective &= gap != 0;
            sharp &= 3u128.pow(n - 1) < gap && gap < 3u128.pow(n);
            pairs += 1;
        }
    }
    let witness_gap = cantor_oracle(&[1, 0, 1]).abs_diff(cantor_oracle(&[1, 1]));
    let witness_n = d_filtration_oracle(&[1, 0, 1], &[1, 1]);
    let printed_fails_on_witness = witness_gap < 3u128.pow(witness_n as u32);
    let w = report.recorded_witness.as_ref().expect("max_len >= 3");
    let flagged = !report.printed_bound && !w.printed && w.gap == witness_gap && w.n == witness_n;
    let pass = report.pass()
        && report.pairs == 8128
        && pairs == 8128
        && digits_ok
        && injective
        && sharp
        && printed_fails_on_witness
        && flagged;
    outcome(
        pass,
        format!(
            "pairs={} sharp bound {}; printed bound flagged failing on [1,0,1] vs [1,1] (n={}, gap={})",
            report.pairs,
            if report.sharp_bound { "holds" } else { "fails" },
            w.n,
            w.gap
        ),
    )
}

/// Sylow number by growth of prefix orders: `None` for infinite.
fn sylow_oracle(spec: &CyclicSumSpec, p: u64) -> Option<u64> {
    let part = |n: usize| {
        spec.orders(n)
            .iter()
            .map(|&a| {
                let mut a = a;
                let mut k = 0;
                while a % p == 0 {
                    a /= p;
                    k += 1;
                }
                k
            })
            .sum::<u64>()
    };
    let (short, long) = (part(256), part(512));
    (short == long).then_some(short)
}

fn criterion_10() -> Outcome {
    use Multiplicity::{Finite, Infinite};
    let s = |v: Vec<(u64, Multiplicity)>| CyclicSumSpec::new(v).unwrap();
    let fixtures: Vec<(CyclicSumSpec, CyclicSumSpec, Option<bool>)> = vec![
        (s(vec![(2, Infinite)]), s(vec![(4, Infinite)]), Some(true)),
        (s(vec![(2, Infinite)]), s(vec![(2, Infinite), (3, Finite(1))]), Some(false)),
        (s(vec![(6, Finite(3))]), s(vec![(6, Finite(3))]), Some(true)),
        (s(vec![(6, Finite(1))]), s(vec![(2, Finite(1)), (3, Finite(1))]), None),
        (s(vec![(4, Finite(1))]), s(vec![(2, Finite(2))]), None),
        (s(vec![(8, Finite(1))]), s(vec![(2, Finite(2))]), None),
        (s(vec![(3, Infinite)]), s(vec![(9, Infinite)]), None),
        (s(vec![(2, Infinite), (3, Infinite)]), s(vec![(6, Infinite)]), None),
        (s(vec![(2, Infinite)]), s(vec![(3, Infinite)]), None),
        (s(vec![(5, Finite(1)), (2, Infinite)]), s(vec![(2, Infinite)]), None),
        (
            s(vec![(12, Finite(1)), (5, Infinite)]),
            s(vec![(4, Finite(1)), (3, Finite(1)), (25, Infinite)]),
            None,
        ),
        (s(vec![(2, Infinite), (3, Finite(1))]), s(vec![(2, Infinite), (9, Finite(1))]), None),
    ];
    let mut equivalent = 0;
    for (k, (g, h, expected)) in fixtures.iter().enumerate() {
        let report = protasov_equivalent(g, h);
        let top = g.listed_orders().into_iter().chain(h.listed_orders()).max().unwrap_or(1);
        let primes: Vec<u64> = (2..=top).filter(|&p| (2..p).all(|d| p % d != 0)).collect();
        let oracle_witness = primes.iter().copied().find(|&p| sylow_oracle(g, p) != sylow_oracle(h, p));
        if report.equivalent != oracle_witness.is_none() || report.witness != oracle_witness {
            return outcome(false, format!("fixture {k}: {g} vs {h} disagrees with the Sylow table"));
        }
        if expected.is_some_and(|e| e != report.equivalent) {
            return outcome(false, format!("fixture {k}: {g} vs {h} has the wrong verdict"));
        }
        equivalent += usize::from(report.equivalent);
    }
    let named = protasov_equivalent(&fixtures[1].0, &fixtures[1].1).witness == Some(3);
    outcome(
        named,
        format!(
            "12 fixtures match the Sylow table ({equivalent} equivalent); Z2^inf vs Z2^inf+Z3 separated at 3"
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut rng = rng(11);
    let mut points = 0usize;
    let mut strict_round_trips = 0;
    let mut balls = 0;
    for k in 0..100 {
        let pool: Vec<u64> = (2..=16).collect();
        let size = rng.gen_range(1..=4);
        let lambda: BTreeSet<u64> = pool.choose_multiple(&mut rng, size).copied().collect();
        let sizes: Vec<u64> = lambda.iter().copied().collect();
        let len = rng.gen_range(1..=30);
        let plan: Vec<(u64, u64)> = (0..len)
            .map(|_| {
                let n = *sizes.choose(&mut rng).unwrap();
                (n, n + rng.gen_range(0..=4))
            })
            .collect();
        let strict = k % 2 == 0;
        let arch = match build_archipelago::<Rational>(&lambda, &plan, strict) {
            Ok(a) => a,
            Err(err) => return outcome(false, format!("instance {k}: {err}")),
        };
        let s = arch.space.space();
        if s.len() > 500 {
            return outcome(false, format!("instance {k}: {} points", s.len()));
        }
        points += s.len();
        if !is_ultrametric(s).verdict || (s.len() <= 120 && !ultrametric_by_triangles(s)) {
            return outcome(false, format!("instance {k}: not ultrametric"));
        }
        let mut ks = Vec::new();
        let mut running = 0;
        for &(_, m) in &plan {
            running += m;
            ks.push(running + u64::from(strict));
        }
        if s.len() <= 200 {
            for (i, a) in arch.islands.iter().enumerate() {
                for (j, b) in arch.islands.iter().enumerate() {
                    let want = if i == j { plan[i].1 } else { ks[i].max(ks[j]) };
                    for &x in &a.points {
                        for &y in &b.points {
                            if x != y && *s.d(x, y) != int(want as i64) {
                                return outcome(false, format!("instance {k}: distance law at ({x},{y})"));
                            }
                        }
                    }
                }
            }
        }
        if strict {
            let mut expected: Vec<ProfileEntry<Rational>> = plan
                .iter()
                .zip(&ks)
                .map(|(&(n, m), &kk)| ProfileEntry {
                    size: n as usize,
                    diameter: int(m as i64),
                    separation: int(kk as i64),
                })
                .collect();
            expected.sort_by(|a, b| (&a.separation, &a.diameter, a.size).cmp(&(&b.separation, &b.diameter, b.size)));
            match island_profile(&arch.space) {
                Ok(p) if p.entries == expected => strict_round_trips += 1,
                _ => return outcome(false, format!("instance {k}: profile does not recover the plan")),
            }
        }
        if let Ok(p) = island_profile(&arch.space) {
            if fingerprint_compare(&p, &p).verdict != FingerprintVerdict::IndistinguishableAtTruncation {
                return outcome(false, format!("instance {k}: profile distinguished from itself"));
            }
        }

        let top = *ks.last().unwrap() as i64;
        let samples: Vec<(usize, Rational)> = (0..25)
            .map(|_| (rng.gen_range(0..s.len()), q(rng.gen_range(0..=2 * top + 4), 2)))
            .collect();
        let report = ball_audit(&arch, &samples);
        for e in &report.entries {
            let ball: Vec<usize> = (0..s.len()).filter(|&y| s.d(e.center, y) <= &e.radius).collect();
            let hub_ball: Vec<usize> = (0..s.len()).filter(|&y| s.d(0, y) <= &e.radius).collect();
            // for the hub itself the hub ball is the only candidate shape
            let mut matches = vec![];
            if ball == hub_ball {
                matches.push(BallShape::HubBall);
            }
            if e.center != 0 {
                if ball == [e.center] {
                    matches.push(BallShape::Singleton);
                }
                let island = arch.islands.iter().find(|is| is.points.contains(&e.center)).unwrap();
                if ball == island.points {
                    matches.push(BallShape::Island);
                }
            }
            if matches != [e.shape] {
                return outcome(false, format!("instance {k}: ball at {} radius {} is {matches:?}", e.center, e.radius));
            }
            if e.shape == BallShape::Island && int(ball.len() as i64) > e.radius {
                return outcome(false, format!("instance {k}: island ball larger than its radius"));
            }
            balls += 1;
        }
        if !report.pass {
            return outcome(false, format!("instance {k}: ball audit failed"));
        }
    }

    let lam2: BTreeSet<u64> = [2].into();
    let lam3: BTreeSet<u64> = [3].into();
    let mut separated = 0;
    for len in 1..=6 {
        let p2 = vec![(2, 2); len];
        let p3 = vec![(3, 3); len];
        let a2 = island_profile(&build_archipelago::<Rational>(&lam2, &p2, true).unwrap().space).unwrap();
        let a3 = island_profile(&build_archipelago::<Rational>(&lam3, &p3, true).unwrap().space).unwrap();
        let again = island_profile(&build_archipelago::<Rational>(&lam2, &p2, true).unwrap().space).unwrap();
        if fingerprint_compare(&a2, &a3).verdict != FingerprintVerdict::Distinct
            || fingerprint_compare(&a2, &again).verdict != FingerprintVerdict::IndistinguishableAtTruncation
        {
            return outcome(false, format!("fingerprints wrong at truncation length {len}"));
        }
        separated += 1;
    }
    outcome(
        true,
        format!(
            "100 instances ({points} points) ultrametric; {strict_round_trips} strict round trips; \
             {separated} lambda={{2}} vs {{3}} truncations distinct; {balls} balls classified"
        ),
    )
}

/// Number, name, check, and wall-clock limit in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "subdominant = minimax oracle", criterion_1, Some(30)),
        (2, "bi-Lipschitz and uniform bounds on rho", criterion_2, Some(10)),
        (3, "m = 1 iff ultrametric", criterion_3, None),
        (4, "L_omega isometric embedding", criterion_4, Some(20)),
        (5, "3-bi-Lipschitz and 6m universal embedding", criterion_5, None),
        (6, "Lipschitz retraction", criterion_6, None),
        (7, "filtration metric ultrametric, left invariant", criterion_7, None),
        (8, "isometric embedding of direct sums", criterion_8, None),
        (9, "ternary Cantor map distortion", criterion_9, Some(5)),
        (10, "Sylow equivalence decisions", criterion_10, None),
        (11, "archipelagos", criterion_11, None),
    ];
    println!("acceptance (seed {})", seed());
    let mut unexpected = Vec::new();
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let mut result = run();
        let took = start.elapsed();
        if let Some(secs) = limit {
            if took > Duration::from_secs(secs) {
                result.pass = false;
                result.detail.push_str(&format!("; runtime over {secs} s"));
            }
        }
        let status = if result.pass { "PASS" } else { "FAIL" };
        let note = if !result.pass && KNOWN_UNATTAINABLE.contains(&id) {
            " [known unattainable]"
        } else {
            ""
        };
        println!(
            "criterion {id:>2} {status}{note} ({:.2}s) {name}: {}",
            took.as_secs_f64(),
            result.detail
        );
        if !result.pass && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
