//! Acceptance runner: one pass/fail line per criterion with its time budget.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use kgraph::bridging::{
    bridging_graph_data, bridging_search, coherence_check, polymorphism_from_matrix, SearchOutcome,
};
use kgraph::constructions::{pullback, rose, MonoidHom};
use kgraph::dimension::{
    dge_eq, hom_check, intertwiner_check, iso_check, pointed_check, rank_invariant, DimElement,
    GeneratorMap,
};
use kgraph::fixtures::fixture_names;
use kgraph::homology::{h0, h0_pullback_compare, rho_pullback_check};
use kgraph::moves::{
    enumerate_valid_partitions, insplit, insplit_matrices, phi_i_generator_map, phi_s_generator_map,
    psi_generator_map, sink_delete, sink_surjectivity_witness,
};
use kgraph::path::{normalize_word_by, paths_of_degree};
use kgraph::{IntMatrix, KGraph, Shift};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn homology_values() -> Check {
    let first = MonoidHom::parse("1;0").map_err(e2s)?;
    let mut seen = Vec::new();
    for n in 2..=6usize {
        let g = pullback(&rose(n), &first).map_err(e2s)?;
        let h = h0(&g).map_err(e2s)?;
        // ℤ/1 is trivial, so n = 2 lists no torsion
        let want: Vec<BigInt> = if n == 2 { vec![] } else { vec![BigInt::from(n - 1)] };
        ensure(h.free_rank == 0 && h.torsion == want, format!("n={n}: got {h}"))?;
        seen.push(format!("n={n}: {h}"));
    }
    Ok(seen.join("; "))
}

fn bridging_negative() -> Check {
    let (lam, om) = (fx("ex5.6-Lambda"), fx("ex5.6-Omega"));
    match bridging_search(&lam, &om, &row(&[1, 1])).map_err(e2s)? {
        SearchOutcome::Exhausted(n) if n == 16u32.into() => Ok("exhausted 16".into()),
        SearchOutcome::Exhausted(n) => Err(format!("exhausted {n}, expected 16")),
        SearchOutcome::Found(_) => Err("found a coherent family".into()),
    }
}

fn bridging_positive() -> Check {
    let (lam, om) = (fx("ex5.7-Lambda"), fx("ex5.7-Omega"));
    let r = row(&[1, 1]);
    let rep = coherence_check(&lam, &om, &r, &ex57_flips(&lam, &om)).map_err(e2s)?;
    ensure(rep.coherent, "explicit flips reported incoherent")?;
    match bridging_search(&lam, &om, &r).map_err(e2s)? {
        SearchOutcome::Found(fam) => {
            ensure(coherence_check(&lam, &om, &r, &fam).map_err(e2s)?.coherent, "search result incoherent")?
        }
        SearchOutcome::Exhausted(n) => return Err(format!("search exhausted {n}")),
    }
    let (lam, om) = (fx("ex5.6-Lambda"), fx("ex5.6-Omega"));
    let poly = polymorphism_from_matrix(&lam, &om, &r).map_err(e2s)?;
    let rep = coherence_check(&lam, &om, &r, &ex56_displayed_flips(&lam, &om)).map_err(e2s)?;
    let w = rep.first_failure.ok_or("displayed flips reported coherent")?;
    let ids = |t: (usize, usize, usize)| {
        format!("({}, {}, {})", poly.edge_id(t.0), om.edge_id(t.1), om.edge_id(t.2))
    };
    let (top, bottom) = (ids(w.top), ids(w.bottom));
    ensure(
        lam.edge_id(w.lambda_i) == "alpha1" && lam.edge_id(w.lambda_j) == "beta2" && poly.edge_id(w.g) == "g1^{u,w}",
        format!("witness triple {}", w.display(&lam, &om, &poly)),
    )?;
    ensure(
        top == "(g1^{u,w}, e2, f1)" && bottom == "(g1^{u,w}, e1, f2)",
        format!("mismatch {top} vs {bottom}"),
    )?;
    Ok(format!("ex5.7 coherent; ex5.6 witness {top} vs {bottom}"))
}

fn insplit_pipeline() -> Check {
    let g = fx("ex3.5-Lambda");
    let v = g.vertex("v").map_err(e2s)?;
    let parts = enumerate_valid_partitions(&g, v).map_err(e2s)?;
    ensure(parts.len() == 1, format!("{} partitions", parts.len()))?;
    let p = &parts[0];
    let (split, _) = insplit(&g, p).map_err(e2s)?;
    ensure(split.is_strict() && split.vertex_count() == 4, "split graph not strict on 4 vertices")?;
    ensure(split.to_data().validate().is_ok(), "split graph fails revalidation")?;
    let phi = phi_i_generator_map(&g, p).map_err(e2s)?;
    for j in 1..=g.rank() {
        let psi = psi_generator_map(&g, p, j).map_err(e2s)?;
        ensure(iso_check(&phi, &psi).map_err(e2s)?, format!("iso_check fails for j={j}"))?;
        let (r, s) = insplit_matrices(&g, p, j).map_err(e2s)?;
        ensure(r.mul(&s) == g.color_matrix(j), format!("RS ≠ A for j={j}"))?;
        ensure(s.mul(&r) == split.color_matrix(j), format!("SR ≠ B for j={j}"))?;
        for i in 1..=g.rank() {
            let (a, b) = (g.color_matrix(i), split.color_matrix(i));
            ensure(a.mul(&r) == r.mul(&b), format!("AR ≠ RB for i={i}, j={j}"))?;
            ensure(b.mul(&s) == s.mul(&a), format!("BS ≠ SA for i={i}, j={j}"))?;
        }
    }
    Ok(format!("partition {}", p.display(&g)))
}

fn sink_deletion() -> Check {
    let g = fx("ex3.5-Lambda");
    let v = g.vertex("v").map_err(e2s)?;
    let s = sink_delete(&g, v).map_err(e2s)?;
    let loops = s.edges().iter().all(|e| e.src == e.rng);
    ensure(s.vertex_count() == 1 && s.edges().len() == 3 && loops, "not a 1-vertex 3-loop graph")?;
    let u = |n: &[i64]| DimElement::from_ints(&[1], n);
    ensure(dge_eq(&s, &u(&[0, 0]), &u(&[0, 7])).map_err(e2s)?, "u(0,0) ≠ u(0,7)")?;
    let two = DimElement::from_ints(&[2], &[1, 0]);
    ensure(dge_eq(&s, &u(&[0, 0]), &two).map_err(e2s)?, "u(0,0) ≠ 2·u(1,0)")?;
    ensure(hom_check(&phi_s_generator_map(&g, v).map_err(e2s)?).map_err(e2s)?, "φ_S is not a hom")?;
    let wit = sink_surjectivity_witness(&g, v).map_err(e2s)?;
    ensure(!wit.is_empty(), "no surjectivity witness")?;
    Ok(format!("{} deleted generators expanded", wit.len()))
}

fn example_seven_one() -> Check {
    let (a, b) = (fx("ex7.1-Lambda1"), fx("ex7.1-Lambda2"));
    ensure(a.squares() != b.squares(), "fixtures share their squares")?;
    let fwd = GeneratorMap::same_names(&a, &b).map_err(e2s)?;
    let bwd = GeneratorMap::same_names(&b, &a).map_err(e2s)?;
    ensure(iso_check(&fwd, &bwd).map_err(e2s)?, "iso_check false")?;
    ensure(pointed_check(&fwd).map_err(e2s)?, "pointed_check false")?;
    Ok("iso and pointed".into())
}

fn non_invariance() -> Check {
    let got: Vec<usize> = ["sec3-Lambda", "sec3-Sigma", "sec3-Gamma"].iter().map(|n| rank_invariant(&fx(n))).collect();
    ensure(got == [1, 2, 2], format!("ranks {got:?}"))?;
    Ok("ranks 1, 2, 2".into())
}

fn random_element<R: Rng>(rng: &mut R, g: &KGraph) -> DimElement {
    let x: Vec<i64> = (0..g.vertex_count()).map(|_| rng.gen_range(-2..=2)).collect();
    let n: Vec<i64> = (0..g.rank()).map(|_| rng.gen_range(-1..=1)).collect();
    DimElement::from_ints(&x, &n)
}

/// x at n equals xA_m at n + m, computed with the oracle's own matrices.
fn pushed_forward<R: Rng>(rng: &mut R, g: &KGraph, a: &DimElement) -> DimElement {
    let m: Vec<u32> = (0..g.rank()).map(|_| rng.gen_range(0..=2)).collect();
    let y = row_times(&to_i128(a), &power_product(g, &m));
    let n: Vec<i64> = a.n.0.iter().zip(&m).map(|(x, d)| x + i64::from(*d)).collect();
    DimElement::new(y.into_iter().map(BigInt::from).collect(), Shift(n))
}

fn equality_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let names = small_fixtures(4);
    let (mut pairs, mut equal) = (0usize, 0usize);
    while pairs < 600 {
        for name in &names {
            let g = fx(name);
            let a = random_element(&mut rng, &g);
            let b = if rng.gen_bool(0.5) { pushed_forward(&mut rng, &g, &a) } else { random_element(&mut rng, &g) };
            let fast = dge_eq(&g, &a, &b).map_err(e2s)?;
            let slow = dge_eq_oracle(&g, &a, &b, 2 * g.vertex_count() as u32);
            ensure(fast == slow, format!("{name}: {} vs {}: dge_eq {fast}, oracle {slow}", a.display(&g), b.display(&g)))?;
            pairs += 1;
            equal += usize::from(fast);
        }
    }
    Ok(format!("{pairs} pairs on {} fixtures, {equal} equal", names.len()))
}

fn confluence_and_matrices() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let names = fixture_names();
    for name in &names {
        let g = fx(name);
        for _ in 0..200 {
            let len = rng.gen_range(0..=5);
            let Some(word) = random_word(&mut rng, &g, len) else { continue };
            let reference = normalize_word_by(&g, &word, |_| 0).map_err(e2s)?;
            let mut r2 = ChaCha8Rng::seed_from_u64(rng.gen());
            let other = normalize_word_by(&g, &word, |n| r2.gen_range(0..n)).map_err(e2s)?;
            ensure(reference == other, format!("{name}: normal forms differ for {word:?}"))?;
        }
        let degs = kgraph::dimension::degrees_up_to(g.rank(), 2);
        for n in &degs {
            let an = g.vertex_matrix(n);
            ensure(to_mat(&an) == power_product(&g, n.coords()), format!("{name}: A_{n:?} ≠ product"))?;
            let mut counts = vec![vec![0i128; g.vertex_count()]; g.vertex_count()];
            for v in 0..g.vertex_count() {
                for p in paths_of_degree(&g, v, n) {
                    counts[p.range()][p.source()] += 1;
                }
            }
            ensure(to_mat(&an) == counts, format!("{name}: A_{n:?} ≠ path counts"))?;
            for m in &degs {
                ensure(an.mul(&g.vertex_matrix(m)) == g.vertex_matrix(&n.add(m)), format!("{name}: A_n A_m ≠ A_(n+m)"))?;
            }
        }
    }
    Ok(format!("{} fixtures", names.len()))
}

/// Every 0/1 (or 0..=2 when small) matrix of the given shape that intertwines.
fn intertwiners(lam: &KGraph, om: &KGraph) -> Vec<IntMatrix> {
    let (d1, d2) = (lam.vertex_count(), om.vertex_count());
    let cells = d1 * d2;
    let max: i64 = if cells <= 4 { 2 } else if cells <= 9 { 1 } else { return vec![] };
    let total = (max as u64 + 1).pow(cells as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let rows: Vec<Vec<i64>> = (0..d1)
            .map(|_| {
                (0..d2)
                    .map(|_| {
                        let x = (c % (max as u64 + 1)) as i64;
                        c /= max as u64 + 1;
                        x
                    })
                    .collect()
            })
            .collect();
        let r = IntMatrix::from_rows(&rows);
        if intertwiner_check(lam, om, &r).unwrap_or(false) {
            out.push(r);
        }
    }
    out
}

/// coherence_check and validation of the bridging graph must agree.
fn dual_route(lam: &KGraph, om: &KGraph, r: &IntMatrix, fam: &kgraph::bridging::FlipFamily) -> Result<bool, String> {
    let coherent = coherence_check(lam, om, r, fam).map_err(e2s)?.coherent;
    let valid = bridging_graph_data(lam, om, r, fam).map_err(e2s)?.validate().is_ok();
    ensure(coherent == valid, format!("coherence {coherent}, bridging graph valid {valid}"))?;
    Ok(coherent)
}

fn oracle_cross_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let names: Vec<&str> = fixture_names().into_iter().filter(|n| fx(n).rank() == 2).collect();
    let (mut checked, mut coherent) = (0usize, 0usize);
    for a in &names {
        for b in &names {
            let (lam, om) = (fx(a), fx(b));
            for r in intertwiners(&lam, &om).into_iter().take(4) {
                for _ in 0..2 {
                    let fam = random_flips(&mut rng, &lam, &om, &r);
                    coherent += usize::from(dual_route(&lam, &om, &r, &fam).map_err(|e| format!("{a}/{b}: {e}"))?);
                    checked += 1;
                }
            }
        }
    }
    for (a, b, fam) in [
        ("ex5.6-Lambda", "ex5.6-Omega", ex56_displayed_flips as fn(&KGraph, &KGraph) -> _),
        ("ex5.7-Lambda", "ex5.7-Omega", ex57_flips),
    ] {
        let (lam, om) = (fx(a), fx(b));
        coherent += usize::from(dual_route(&lam, &om, &row(&[1, 1]), &fam(&lam, &om))?);
        checked += 1;
    }
    let mut random = 0usize;
    while random < 50 {
        let d1 = rng.gen_range(1..=2);
        let (a1, a2) = random_commuting(&mut rng, d1, 2);
        let Some(ld) = random_two_graph(&mut rng, &a1, &a2, "L") else { continue };
        let lam = ld.validate().map_err(e2s)?;
        let (om, r, fam) = if rng.gen_bool(0.5) {
            let om = relabel(&ld, "W").validate().map_err(e2s)?;
            let c = rng.gen_range(1..=2i64);
            let r = IntMatrix::from_rows(&(0..d1).map(|i| (0..d1).map(|j| if i == j { c } else { 0 }).collect()).collect::<Vec<_>>());
            let fam = if rng.gen_bool(0.5) { copy_flips(&lam, &om, &r) } else { random_flips(&mut rng, &lam, &om, &r) };
            (om, r, fam)
        } else {
            let d2 = rng.gen_range(1..=2);
            let (b1, b2) = random_commuting(&mut rng, d2, 2);
            let Some(od) = random_two_graph(&mut rng, &b1, &b2, "W") else { continue };
            let om = od.validate().map_err(e2s)?;
            let rs = intertwiners(&lam, &om);
            if rs.is_empty() {
                continue;
            }
            let r = rs[rng.gen_range(0..rs.len())].clone();
            let fam = random_flips(&mut rng, &lam, &om, &r);
            (om, r, fam)
        };
        coherent += usize::from(dual_route(&lam, &om, &r, &fam)?);
        checked += 1;
        random += 1;
    }
    Ok(format!("{checked} instances ({random} random), {coherent} coherent"))
}

fn pullback_coherence() -> Check {
    let first = MonoidHom::parse("1;0").map_err(e2s)?;
    for n in 2..=6 {
        ensure(h0_pullback_compare(&rose(n), &first).map_err(e2s)?, format!("H₀ differs for n={n}"))?;
        ensure(rho_pullback_check(&rose(n), &first).map_err(e2s)?, format!("ρ check fails for n={n}"))?;
    }
    Ok("n = 2..6".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 11] = [
        ("homology values", Duration::from_secs(1), homology_values),
        ("bridging negative", Duration::from_secs(1), bridging_negative),
        ("bridging positive", Duration::from_secs(1), bridging_positive),
        ("in-split pipeline", Duration::from_secs(1), insplit_pipeline),
        ("sink deletion", Duration::from_secs(1), sink_deletion),
        ("identical talented monoids", Duration::from_secs(1), example_seven_one),
        ("non-invariance ranks", Duration::from_secs(1), non_invariance),
        ("equality oracle", Duration::from_secs(10), equality_oracle),
        ("confluence and vertex matrices", Duration::from_secs(10), confluence_and_matrices),
        ("bridging oracle cross-check", Duration::from_secs(30), oracle_cross_check),
        ("pullback coherence", Duration::from_secs(5), pullback_coherence),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if took <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name} [{} ms, limit {} ms]: {detail}", i + 1, took.as_millis(), budget.as_millis());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
