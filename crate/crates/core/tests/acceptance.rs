mod common;

use std::time::{Duration, Instant};

use coadjoint_core::minors::{build_phi, is_extremal, minor_lambda, MinorSpec};
use coadjoint_core::poly::jacobian_rank;
use coadjoint_core::roots::all_ideals;
use coadjoint_core::verify::{
    check_invariance, check_invariance_polys, in_span, oracle_invariants, prime_point,
    random_ideal, skew_rank_stats,
};
use coadjoint_core::weyl::reflection_product;
use coadjoint_core::{
    all_invariants, build_diagram, build_w, ideal_from_pairs, inversions, Case, InvariantRecord,
    Permutation, RegularIdeal, Root,
};
use common::{naive_minor, parse, same_up_to_sign, subsets, y};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn example1() -> RegularIdeal {
    ideal_from_pairs(7, &[(5, 1), (7, 2)], false).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

const STEPS: [&str; 6] = [
    ".......\n_......\n__.....\n___....\nB___...\nB____..\nBB____.\n",
    ".......\n+......\n+_.....\nX--....\nB___...\nB____..\nBB____.\n",
    ".......\n+......\n++.....\nX--....\nB+__...\nBX-_-..\nBB____.\n",
    ".......\n+......\n++.....\nX--....\nB++_...\nBX-_-..\nBBX_-_.\n",
    ".......\n+......\n++.....\nX--....\nB++_...\nBX-+-..\nBBXX--.\n",
    ".......\n+......\n++.....\nX--....\nB++X...\nBX-+-..\nBBXX--.\n",
];

fn criterion1() -> Outcome {
    let start = Instant::now();
    let d = build_diagram(&example1());
    for (step, expected) in STEPS.iter().enumerate() {
        let got = d.render_at(Some(step));
        ensure(got == *expected, || format!("step {step}:\n{got}"))?;
    }
    ensure(d.render() == STEPS[5], || {
        format!("final grid:\n{}", d.render())
    })?;
    let s: Vec<Root> = [(4, 1), (6, 2), (7, 3), (7, 4), (5, 4)]
        .iter()
        .map(|&(i, j)| Root::new(i, j))
        .collect();
    ensure(d.crosses() == s.as_slice(), || {
        format!("S = {:?}", d.crosses())
    })?;
    let c = d.counts();
    ensure((c.crosses, c.plus_minus, c.bullets) == (5, 12, 4), || {
        format!("{c:?}")
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "5 steps, S and counts match in {:?}",
        start.elapsed()
    ))
}

fn criterion2() -> Outcome {
    let m = example1();
    let w = build_w(&m);
    let expected = Permutation::from_images(vec![4, 6, 7, 5, 3, 2, 1]).unwrap();
    ensure(w == expected, || format!("w = {w}"))?;
    let product = reflection_product(7, build_diagram(&m).crosses()).map_err(|e| e.to_string())?;
    ensure(product == w, || format!("reflection product {product}"))?;
    let l = inversions(&w);
    ensure(l == 17 && m.factor_dim() == 17, || {
        format!("l(w) = {l}, dim = {}", m.factor_dim())
    })?;
    Ok("w = (4,6,7,5,3,2,1) = reflection product, l(w) = 17 = dim L".into())
}

fn criterion3() -> Outcome {
    let m = example1();
    let recs = all_invariants(&m).map_err(|e| e.to_string())?;
    ensure(recs.len() == 5, || format!("{} records", recs.len()))?;
    let printed = [
        y(4, 1),
        y(6, 2),
        y(7, 3),
        parse("y[6,2]*y[7,4]*y[4,1] + y[6,2]*y[7,3]*y[3,1]"),
        parse("y[5,2]*y[6,3]*y[7,4] - y[5,2]*y[6,4]*y[7,3] - y[5,3]*y[6,2]*y[7,4] + y[5,4]*y[6,2]*y[7,3]"),
    ];
    for (rec, want) in recs.iter().zip(&printed) {
        ensure(same_up_to_sign(&rec.p, want), || {
            format!("P{} = {}, expected {want}", rec.xi, rec.p)
        })?;
    }

    let phi = build_phi(&m);
    let spec = MinorSpec::new(7, vec![2, 3, 4, 7], vec![1, 2, 3, 4]).map_err(|e| e.to_string())?;
    let minor = minor_lambda(&phi, &spec).map_err(|e| e.to_string())?;
    let top = minor.leading().cloned().unwrap_or_default();
    let want = parse("y[7,4]*y[4,1] + y[7,3]*y[3,1]");
    ensure(same_up_to_sign(&top, &want), || {
        format!("printed minor top coefficient {top}")
    })?;
    ensure(is_extremal(&phi, &spec).map_err(|e| e.to_string())?, || {
        "printed minor not extremal".into()
    })?;
    let report = check_invariance_polys(&[("printed".into(), top)], &m, 100, 0);
    ensure(report.passed(), || {
        format!("{:?}", report.failures().collect::<Vec<_>>())
    })?;
    Ok("P1..P5 match; printed rows {2,3,4,7} minor extremal and invariant".into())
}

fn corner_minor(n: usize, i: usize) -> coadjoint_core::Polynomial {
    let rows: Vec<usize> = (n - i + 1..=n).collect();
    let cols: Vec<usize> = (1..=i).collect();
    naive_minor(&RegularIdeal::empty(n), &rows, &cols).coeff(0)
}

fn criterion4() -> Outcome {
    for n in 3..=6 {
        let m = RegularIdeal::empty(n);
        let recs = all_invariants(&m).map_err(|e| e.to_string())?;
        ensure(recs.len() == n / 2, || {
            format!("n = {n}: {} records", recs.len())
        })?;
        let phi = build_phi(&m);
        for i in 1..=n / 2 {
            let corner = corner_minor(n, i);
            ensure(recs.iter().any(|r| same_up_to_sign(&r.p, &corner)), || {
                format!("n = {n}: corner minor {i} missing")
            })?;
            let spec = MinorSpec::new(n, (n - i + 1..=n).collect(), (1..=i).collect()).unwrap();
            ensure(is_extremal(&phi, &spec).map_err(|e| e.to_string())?, || {
                format!("n = {n}: corner minor {i} not extremal")
            })?;
        }
    }
    Ok("n = 3..6 invariants are the corner minors, all extremal".into())
}

struct Instance {
    ideal: RegularIdeal,
    records: Vec<InvariantRecord>,
}

fn instances() -> Vec<RegularIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..60)
        .map(|k| {
            let n = if k < 30 { 8 } else { rng.gen_range(2..=8) };
            random_ideal(n, &mut rng)
        })
        .collect()
}

fn check_instance(ideal: &RegularIdeal) -> Result<Instance, String> {
    let n = ideal.n();
    let d = build_diagram(ideal);
    let mism = coadjoint_core::diagram::sign_mismatches(&d);
    ensure(mism.is_empty(), || format!("symbol mismatch {:?}", mism[0]))?;
    let records = all_invariants(ideal).map_err(|e| e.to_string())?;
    ensure(records.len() == d.crosses().len(), || {
        "one record per cross".into()
    })?;
    let phi = build_phi(ideal);
    for r in &records {
        let t = r.xi.col;
        ensure(r.rows.len() == r.cols.len(), || {
            format!("{}: |I| != |J|", r.xi)
        })?;
        let c = r.cols[0];
        ensure(r.cols == (c..=t).collect::<Vec<_>>(), || {
            format!("{}: J = {:?}", r.xi, r.cols)
        })?;
        let spec = MinorSpec::new(n, r.rows.clone(), r.cols.clone()).unwrap();
        ensure(is_extremal(&phi, &spec).map_err(|e| e.to_string())?, || {
            format!("{} not extremal", r.xi)
        })?;
        let degree = minor_lambda(&phi, &spec)
            .map_err(|e| e.to_string())?
            .degree();
        ensure(degree == Some(r.degree), || {
            format!("{}: degree {degree:?}", r.xi)
        })?;
        match r.case {
            Case::One => ensure(r.degree == 0, || {
                format!("{}: case 1 degree {}", r.xi, r.degree)
            })?,
            Case::Two => ensure(r.d_star == Some(r.degree), || {
                format!("{}: degree {} vs d* {:?}", r.xi, r.degree, r.d_star)
            })?,
        }
    }
    let report = check_invariance(&records, ideal, 100, 0);
    ensure(report.passed(), || {
        format!("{:?}", report.failures().next())
    })?;
    Ok(Instance {
        ideal: ideal.clone(),
        records,
    })
}

fn describe(m: &RegularIdeal) -> String {
    format!(
        "n = {}, M = {:?}",
        m.n(),
        m.roots().iter().collect::<Vec<_>>()
    )
}

fn criterion5(out: &mut Vec<Instance>) -> Outcome {
    let start = Instant::now();
    let ideals = instances();
    for m in &ideals {
        out.push(check_instance(m).map_err(|e| format!("{}: {e}", describe(m)))?);
    }
    within(start, Duration::from_secs(60))?;
    let twos = out
        .iter()
        .flat_map(|i| &i.records)
        .filter(|r| r.case == Case::Two)
        .count();
    Ok(format!(
        "{} ideals ({} case-2 crosses) in {:?}",
        ideals.len(),
        twos,
        start.elapsed()
    ))
}

fn criterion6(instances: &[Instance]) -> Outcome {
    ensure(!instances.is_empty(), || "no instances".into())?;
    for inst in instances {
        let stats = skew_rank_stats(&inst.ideal, 20, 0);
        let c = build_diagram(&inst.ideal).counts();
        ensure(
            stats.max_rank == c.plus_minus && stats.corank == c.crosses,
            || format!("{}: {stats:?} vs {c:?}", describe(&inst.ideal)),
        )?;
    }
    Ok(format!(
        "{} instances, rank = plus/minus, corank = crosses",
        instances.len()
    ))
}

fn criterion7(instances: &[Instance]) -> Outcome {
    ensure(!instances.is_empty(), || "no instances".into())?;
    for inst in instances {
        let polys: Vec<_> = inst.records.iter().map(|r| r.p.clone()).collect();
        let rank = jacobian_rank(&polys, &prime_point(&inst.ideal).full_point())
            .map_err(|e| e.to_string())?;
        ensure(rank == polys.len(), || {
            format!("{}: rank {rank} of {}", describe(&inst.ideal), polys.len())
        })?;
    }
    Ok(format!(
        "{} instances at full Jacobian rank",
        instances.len()
    ))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=5 {
        for m in all_ideals(n) {
            let basis = oracle_invariants(&m, 4, 1_000_000).map_err(|e| e.to_string())?;
            for r in all_invariants(&m).map_err(|e| e.to_string())? {
                if r.p.degree().is_some_and(|d| d <= 4) {
                    ensure(in_span(&basis, &r.p), || {
                        format!("{}: P{} outside oracle span", describe(&m), r.xi)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{checked} invariants in oracle span, {:?}",
        start.elapsed()
    ))
}

fn criterion9() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        for m in all_ideals(n) {
            let phi = build_phi(&m);
            for k in 1..=n {
                for rows in subsets(n, k) {
                    for cols in subsets(n, k) {
                        let spec = MinorSpec::new(n, rows.clone(), cols.clone()).unwrap();
                        let got = minor_lambda(&phi, &spec).map_err(|e| e.to_string())?;
                        ensure(got == naive_minor(&m, &rows, &cols), || {
                            format!("{}: rows {rows:?} cols {cols:?}", describe(&m))
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let m = random_ideal(n, &mut rng);
        let k = rng.gen_range(1..=n.min(6));
        let pick = |rng: &mut ChaCha8Rng| {
            let mut all: Vec<usize> = (1..=n).collect();
            let mut chosen = Vec::new();
            for _ in 0..k {
                chosen.push(all.remove(rng.gen_range(0..all.len())));
            }
            chosen.sort_unstable();
            chosen
        };
        let rows = pick(&mut rng);
        let cols = pick(&mut rng);
        let spec = MinorSpec::new(n, rows.clone(), cols.clone()).unwrap();
        let got = minor_lambda(&build_phi(&m), &spec).map_err(|e| e.to_string())?;
        ensure(got == naive_minor(&m, &rows, &cols), || {
            format!("{}: rows {rows:?} cols {cols:?}", describe(&m))
        })?;
        count += 1;
    }
    Ok(format!("{count} minors agree with the permutation sum"))
}

fn main() {
    let mut instances = Vec::new();
    let results = vec![
        ("1 example 1 diagram", criterion1()),
        ("2 permutation identities", criterion2()),
        ("3 example 1 invariants", criterion3()),
        ("4 corner minors of the free factor", criterion4()),
        ("5 random ideal properties", criterion5(&mut instances)),
        ("6 orbit statistics", criterion6(&instances)),
        ("7 jacobian independence", criterion7(&instances)),
        ("8 oracle containment", criterion8()),
        ("9 determinant oracle", criterion9()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
