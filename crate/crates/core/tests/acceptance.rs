//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p multisum --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use multisum::census::{enumerate, Family, Mode};
use multisum::schmerl::{
    check_conditions, extract_modulus, lemma2_resolve, part_one, Lemma2Input, SequencePrefix,
};
use multisum::{detect_linear, multisum_closure, verify_certificate, IntSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{lemma2_inputs, quad_multisums, random_seed, subset, valid_prefixes};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(v: &[u64]) -> IntSet {
    IntSet::from_elements(v.to_vec()).unwrap()
}

fn paper_examples() -> Outcome {
    let c = set(&[1, 3, 7]).classify();
    ensure(c.is_vacuously_multisum && c.is_multisum_free, || {
        format!("{{1,3,7}} classified as {c:?}")
    })?;
    let s = set(&[1, 3, 5, 6]);
    let c = s.classify();
    ensure(c.is_multisum_closed && !c.is_vacuously_multisum, || {
        format!("{{1,3,5,6}} classified as {c:?}")
    })?;
    let ms = s.multisums();
    ensure(ms == [6], || format!("multisums of {{1,3,5,6}} are {ms:?}"))?;
    Ok("{1,3,7} vacuous and free; {1,3,5,6} has multisums {6}".into())
}

fn characterization() -> Outcome {
    let mut mismatches = 0;
    for mask in 1u32..1 << 12 {
        let s = subset(mask);
        let set = IntSet::new(s.clone(), 12).unwrap();
        let ms: BTreeSet<u64> = set.multisums().into_iter().collect();
        let strict: BTreeSet<u64> = set.strict_multisums().into_iter().collect();
        if ms != quad_multisums(&s, false) || strict != quad_multisums(&s, true) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} mismatching subsets")
    })?;
    Ok("4095 subsets, 0 mismatches".into())
}

fn closure_grading() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut violations = Vec::new();
    for _ in 0..200 {
        let seed = random_seed(&mut rng, 10, 5);
        let extra = random_seed(&mut rng, 10, 3);
        let big = multisum_closure(&set(&seed), 1000).unwrap();
        let small = multisum_closure(&set(&seed), 500).unwrap();
        if big.result.restrict(500).unwrap() != small.result {
            violations.push(format!("grading {seed:?}"));
        }
        let again = multisum_closure(&big.result, 1000).unwrap();
        if again.result != big.result {
            violations.push(format!("idempotence {seed:?}"));
        }
        let mut more = seed.clone();
        more.extend(extra);
        more.sort_unstable();
        more.dedup();
        let sup = multisum_closure(&set(&more), 1000).unwrap();
        if !big.result.is_subset_of(&sup.result) {
            violations.push(format!("monotonicity {seed:?} {more:?}"));
        }
    }
    ensure(violations.is_empty(), || violations.join(", "))?;
    Ok("200 seeds, 0 violations".into())
}

fn theorem_at_desk_scale() -> Outcome {
    let b = 2000;
    let mut tested = 0;
    for mask in 1u32..1 << 8 {
        let seed = subset(mask);
        let c = multisum_closure(&set(&seed), b).unwrap();
        if !(c.saturated && c.reaches_top_quarter()) {
            continue;
        }
        tested += 1;
        let a = &c.result;
        let cert = *detect_linear(a, 10)
            .unwrap()
            .certificate()
            .ok_or_else(|| format!("{seed:?}: no certificate"))?;
        ensure(verify_certificate(a, &cert), || {
            format!("{seed:?}: {cert:?} fails")
        })?;
        let exact = (cert.n + 1..=b).all(|v| a.contains(v) == (v % cert.k == 0));
        ensure(exact, || format!("{seed:?}: window is not exact"))?;
    }
    Ok(format!("{tested} infinite closures certified"))
}

fn constructive_pipeline() -> Outcome {
    let limit = Duration::from_secs(10);
    let mut ks = Vec::new();
    for (name, a, want) in [
        ("[1,2000]", IntSet::interval(1, 2000, 2000).unwrap(), 1),
        ("evens", IntSet::multiples(2, 2000).unwrap(), 2),
        ("multiples of 5", IntSet::multiples(5, 2000).unwrap(), 5),
    ] {
        let start = Instant::now();
        let prefix = SequencePrefix::from_set(&a, 3).map_err(|e| format!("{name}: {e}"))?;
        let ex = extract_modulus(&prefix, &a).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        ensure(ex.k == want, || {
            format!("{name}: k = {}, expected {want}", ex.k)
        })?;
        ensure(ex.part_one.k % ex.k == 0, || {
            format!(
                "{name}: part one k {} not divisible by {}",
                ex.part_one.k, ex.k
            )
        })?;
        let mut prev = ex.part_two.k0;
        for step in &ex.part_two.steps {
            ensure(step.k_next < prev, || {
                format!("{name}: chain does not decrease")
            })?;
            prev = step.k_next;
        }
        ensure(elapsed < limit, || format!("{name}: took {elapsed:?}"))?;
        ks.push(ex.k.to_string());
    }
    Ok(format!("k = {}", ks.join(", ")))
}

fn lemma2_coverage() -> Outcome {
    let ambients = [
        IntSet::interval(1, 400, 400).unwrap(),
        IntSet::multiples(2, 400).unwrap(),
        multisum_closure(&set(&[2, 3, 4]), 400).unwrap().result,
        multisum_closure(&set(&[3, 4, 5, 6]), 400).unwrap().result,
    ];
    let mut seen = BTreeSet::new();
    let mut resolved = 0;
    for a in &ambients {
        for (d1, d2, x, y) in lemma2_inputs(24, 48) {
            let inp = Lemma2Input::new(d1, d2, x, y);
            let a_n = d1 + d2 - 1;
            if inp.validate(a, a_n).is_err() {
                continue;
            }
            let r = lemma2_resolve(&inp, a, a_n).map_err(|e| format!("{inp:?}: {e}"))?;
            r.witness
                .verify(a, a_n)
                .map_err(|e| format!("{inp:?}: {e}"))?;
            ensure(r.witness.k > d1 + d2, || {
                format!("{inp:?}: k = {}", r.witness.k)
            })?;
            seen.insert((r.case.label(), r.doubled));
            resolved += 1;
        }
    }
    let labels: Vec<String> = seen
        .iter()
        .map(|(c, d)| format!("{c}{}", if *d { "+" } else { "" }))
        .collect();
    ensure(seen.len() == 6, || {
        format!("only reached {}", labels.join(" "))
    })?;
    Ok(format!("{resolved} inputs, branches {}", labels.join(" ")))
}

fn part_one_counting() -> Outcome {
    let mut total = 0;
    let mut branch = 0;
    for (n, lim) in [(3usize, 60u64), (4, 30), (5, 24), (6, 20)] {
        for terms in valid_prefixes(n, lim) {
            let prefix = SequencePrefix::new(terms.clone(), n).unwrap();
            ensure(check_conditions(&prefix).passed, || {
                format!("{terms:?} fails C1/C2")
            })?;
            let trace = part_one(&prefix).map_err(|e| format!("{terms:?}: {e}"))?;
            trace
                .witness
                .verify(&prefix.to_set(), prefix.a_n())
                .map_err(|e| format!("{terms:?}: {e}"))?;
            total += 1;
            if trace.direct_witness.is_none() {
                branch += 1;
                let c = trace.counting;
                ensure(c.d_size >= 3 * n - 2, || {
                    format!("{terms:?}: |D| = {}", c.d_size)
                })?;
                ensure(c.max_membership <= 3, || format!("{terms:?}: {c:?}"))?;
                ensure(c.inequality_holds(), || format!("{terms:?}: {c:?}"))?;
            }
        }
    }
    if branch == 0 {
        Ok(format!(
            "vacuous: no-direct-witness branch reached 0 of {total} prefixes"
        ))
    } else {
        Ok(format!("branch reached {branch} of {total} prefixes"))
    }
}

fn census_oracle() -> Outcome {
    for f in Family::ALL {
        for b in 1..=18 {
            let dfs = enumerate(f, b, Mode::DfsPruned, 0).unwrap();
            let ex = enumerate(f, b, Mode::Exhaustive, 0).unwrap();
            ensure((dfs.count, dfs.max_size) == (ex.count, ex.max_size), || {
                format!("{f} B={b}: {dfs:?} vs {ex:?}")
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    while pairs < 1000 {
        let sup: Vec<u64> = (1..=40).filter(|_| rng.gen_bool(0.25)).collect();
        let sub: Vec<u64> = sup.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if sub.is_empty() {
            continue;
        }
        pairs += 1;
        let free_sup = IntSet::new(sup.clone(), 40)
            .unwrap()
            .classify()
            .is_multisum_free;
        let free_sub = IntSet::new(sub.clone(), 40)
            .unwrap()
            .classify()
            .is_multisum_free;
        ensure(!free_sup || free_sub, || format!("{sub:?} ⊆ {sup:?}"))?;
    }
    Ok("4 families, B = 1..18; 1000 subset pairs".into())
}

fn performance_floor() -> Outcome {
    let limit = Duration::from_secs(10);
    let mut times = Vec::new();
    for seed in [[1, 2, 3], [2, 3, 4]] {
        let start = Instant::now();
        let c = multisum_closure(&set(&seed), 1 << 20).unwrap();
        let elapsed = start.elapsed();
        ensure(c.saturated, || format!("{seed:?} not saturated"))?;
        ensure(elapsed < limit, || format!("{seed:?} took {elapsed:.2?}"))?;
        times.push(format!("{seed:?} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "paper examples",
            paper_examples,
            Some(Duration::from_secs(1)),
        ),
        (
            "characterization oracle",
            characterization,
            Some(Duration::from_secs(60)),
        ),
        (
            "closure grading",
            closure_grading,
            Some(Duration::from_secs(60)),
        ),
        ("theorem at desk scale", theorem_at_desk_scale, None),
        (
            "constructive pipeline",
            constructive_pipeline,
            Some(Duration::from_secs(30)),
        ),
        ("lemma 2 case coverage", lemma2_coverage, None),
        ("part one counting", part_one_counting, None),
        (
            "census oracle",
            census_oracle,
            Some(Duration::from_secs(300)),
        ),
        (
            "performance floor",
            performance_floor,
            Some(Duration::from_secs(20)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed >= limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let bound = limit.map_or(String::new(), |l| format!(" < {}s", l.as_secs()));
        match outcome {
            Ok(detail) => println!(
                "PASS {} {name} [{:.2}s{bound}]: {detail}",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL {} {name} [{:.2}s{bound}]: {detail}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
