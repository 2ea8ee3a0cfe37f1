//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Built with `harness = false`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cellkit::based::{
    classify_spectral_graphs, dihedral_ring_from_formulas, dihedral_ring_from_hecke, enumerate_transitive_modules,
    quadratic_ring, subtwo_census,
};
use cellkit::cells::{cell_report, compute_cells, CellDecomposition, ReportFormat, ReportJson};
use cellkit::coxeter::{CoxeterSystem, Element};
use cellkit::hecke::{HeckeProducts, KLTable};
use common::load_grid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Group {
    sys: CoxeterSystem,
    table: KLTable,
    dec: CellDecomposition,
}

fn build(spec: &str) -> Group {
    let sys = CoxeterSystem::build(spec.parse().unwrap()).unwrap();
    let table = KLTable::build(&sys).unwrap();
    let dec = compute_cells(HeckeProducts::new(&sys, &table));
    Group { sys, table, dec }
}

fn sizes(g: &Group) -> Vec<usize> {
    g.dec.two_sided_cells().blocks().iter().map(Vec::len).collect()
}

type Boxes = BTreeSet<BTreeSet<Element>>;

/// Compares the JSON cell report with a fixture, box by box, as sets.
fn report_matches_fixture(g: &Group, fixture: &str) -> Result<usize, String> {
    let text = cell_report(&g.sys, &g.dec, ReportFormat::Json).map_err(|e| e.to_string())?;
    let report: ReportJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let parse = |w: &String| g.sys.parse_label(w).expect("valid word");
    let to_boxes = |grid: &Vec<Vec<Vec<String>>>| -> Boxes {
        grid.iter()
            .flatten()
            .filter(|b| !b.is_empty())
            .map(|b| b.iter().map(parse).collect())
            .collect()
    };
    let want = load_grid(fixture);
    ensure!(want.len() == report.cells.len(), "{} cells, expected {}", report.cells.len(), want.len());
    let mut used = BTreeSet::new();
    for cell in &want {
        let boxes = to_boxes(&cell.rows);
        let hit = report
            .cells
            .iter()
            .position(|c| c.a == cell.a && to_boxes(&c.grid) == boxes);
        match hit {
            Some(j) if used.insert(j) => {}
            _ => return Err(format!("no report cell matches the fixture cell with a = {}", cell.a)),
        }
    }
    Ok(want.len())
}

fn criterion_1() -> Outcome {
    let g = build("B3");
    ensure!(sizes(&g) == [1, 14, 9, 9, 14, 1], "sizes {:?}", sizes(&g));
    ensure!(g.dec.a_values() == [0, 1, 2, 3, 4, 9], "a-values {:?}", g.dec.a_values());
    let part = g.dec.two_sided_cells();
    for j in 0..part.len() {
        for k in 0..part.len() {
            ensure!(part.comparable(j, k), "cells {j} and {k} incomparable");
        }
    }
    let n = report_matches_fixture(&g, "b3_cells.txt")?;
    Ok(format!("6 cells, sizes and a-values exact, linear order, {n}/6 grids equal"))
}

fn criterion_2() -> Outcome {
    let g = build("B4");
    ensure!(g.dec.a_values() == [0, 1, 2, 3, 4, 4, 5, 6, 9, 16], "a-values {:?}", g.dec.a_values());
    let part = g.dec.two_sided_cells();
    let mut incomparable = Vec::new();
    for j in 0..part.len() {
        for k in j + 1..part.len() {
            if !part.comparable(j, k) {
                incomparable.push((g.dec.a_value(j), g.dec.a_value(k)));
            }
        }
    }
    ensure!(incomparable == [(4, 4)], "incomparable pairs by a-value {incomparable:?}");
    let n = report_matches_fixture(&g, "b4_cells.txt")?;
    Ok(format!("10 cells, a-values exact, only the two a = 4 cells incomparable, {n}/10 grids equal"))
}

fn criterion_3() -> Outcome {
    let b3 = build("B3");
    let j4 = (0..b3.dec.two_sided_cells().len())
        .find(|&j| b3.dec.a_value(j) == 4)
        .ok_or("no a = 4 cell in B3")?;
    ensure!(b3.dec.is_nice(j4), "B3 a = 4 cell not nice");

    let b4 = build("B4");
    let mut non_sr = 0;
    for j in 0..b4.dec.two_sided_cells().len() {
        if !b4.dec.is_strongly_regular(j) {
            non_sr += 1;
            ensure!(b4.dec.is_nice(j), "B4 cell {j} (a = {}) neither SR nor nice", b4.dec.a_value(j));
        }
    }

    let b5 = build("B5");
    let bad: Vec<u32> = (0..b5.dec.two_sided_cells().len())
        .filter(|&j| !b5.dec.is_strongly_regular(j) && !b5.dec.is_nice(j))
        .map(|j| b5.dec.a_value(j))
        .collect();
    ensure!(bad == [11], "B5 cells neither SR nor nice have a-values {bad:?}");
    Ok(format!(
        "B3 a = 4 nice; {non_sr} non-SR B4 cells all nice; B5 ({} cells) has one bad cell, a = 11",
        b5.dec.two_sided_cells().len()
    ))
}

fn criterion_4() -> Outcome {
    let g = build("B3");
    let one = g.sys.parse_label("1").unwrap();
    let h: Vec<String> = g.dec.h_cell(g.dec.cell_of(one).0).iter().map(|&x| g.sys.label(x)).collect();
    ensure!(h == ["1", "121"], "H-cell {h:?}");
    let e = enumerate_transitive_modules(&quadratic_ring(0), 2, None);
    ensure!(!e.partial, "partial enumeration");
    let xs: Vec<&Vec<Vec<u64>>> = e.modules.iter().map(|m| &m.matrices[1]).collect();
    ensure!(xs == [&vec![vec![1]], &vec![vec![0, 1], vec![1, 0]]], "modules {xs:?}");
    Ok("H = {1, 121}; x -> (1) and x -> (0 1 / 1 0), nothing else".into())
}

fn criterion_5() -> Outcome {
    for n in [5, 7, 9] {
        let a = dihedral_ring_from_formulas(n).map_err(|e| e.to_string())?;
        let b = dihedral_ring_from_hecke(n).map_err(|e| e.to_string())?;
        ensure!(a.tensor() == b.tensor(), "I2({n}): formula and Hecke rings differ");
        let sys = CoxeterSystem::build(format!("I2({n})").parse().unwrap()).unwrap();
        let table = KLTable::build(&sys).unwrap();
        for y in sys.elements() {
            for x in sys.elements().filter(|&x| sys.bruhat_leq(x, y)) {
                ensure!(table.kl(x, y).coeffs() == [1], "I2({n}): P({}, {}) != 1", sys.label(x), sys.label(y));
            }
        }
    }
    Ok("n = 5, 7, 9: rings equal constant by constant; all P_{x,y} = 1".into())
}

fn criterion_6() -> Outcome {
    let expected: [(u32, &[&str]); 7] = [
        (3, &["A2"]),
        (5, &["A4"]),
        (7, &["A6"]),
        (6, &["A5", "D4"]),
        (8, &["A7", "D5"]),
        (10, &["A9", "D6"]),
        (12, &["A11", "D7", "E6"]),
    ];
    for (n, want) in expected {
        let graphs = classify_spectral_graphs(n, 12);
        let mut names: Vec<&str> = graphs.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        ensure!(names == want, "n = {n}: {names:?}");
        for g in &graphs {
            ensure!(g.certificate.divides, "n = {n}: {} not certified", g.name);
            ensure!(g.certificate.spectral_radius < 2.0, "n = {n}: radius >= 2");
        }
    }
    let census = subtwo_census(12);
    let mut ade: Vec<String> = (1..=12).map(|k| format!("A{k}")).collect();
    ade.extend((4..=12).map(|k| format!("D{k}")));
    ade.extend(["E6", "E7", "E8"].map(String::from));
    ade.sort();
    ensure!(census == ade, "census {census:?}");
    Ok("all seven lists exact with divisibility certificates; census on <= 12 vertices is A1-A12, D4-D12, E6-E8".into())
}

fn criterion_7() -> Outcome {
    for spec in ["B3", "B4"] {
        let g = build(spec);
        let (sys, dec) = (&g.sys, &g.dec);
        let part = dec.two_sided_cells();
        // partitions
        for p in [dec.left_cells(), dec.right_cells(), part] {
            let total: usize = p.blocks().iter().map(Vec::len).sum();
            ensure!(total == sys.order(), "{spec}: partition does not cover W");
        }
        for x in sys.elements() {
            let (l, r, j) = dec.cell_of(x);
            ensure!(dec.left_cells().block(l).iter().all(|&y| dec.cell_of(y).2 == j), "{spec}: left cell splits");
            ensure!(dec.right_cells().block(r).iter().all(|&y| dec.cell_of(y).2 == j), "{spec}: right cell splits");
            // inverse exchanges left and right cells
            let xi = sys.inverse(x);
            let flipped: BTreeSet<Element> = dec.left_cells().block(l).iter().map(|&y| sys.inverse(y)).collect();
            let right: BTreeSet<Element> = dec.right_cells().block(dec.cell_of(xi).1).iter().copied().collect();
            ensure!(flipped == right, "{spec}: inverse of a left cell is not a right cell");
            ensure!(dec.a_function(x) == dec.a_value(j), "{spec}: a not constant on cells");
        }
        // w -> w w0 reverses the two-sided order
        let w0 = sys.longest();
        let phi = |j: usize| part.cell_of(sys.multiply(part.block(j)[0], w0));
        for j in 0..part.len() {
            for k in 0..part.len() {
                ensure!(part.leq(j, k) == part.leq(phi(k), phi(j)), "{spec}: w0 does not reverse the order");
            }
        }
        // KL polynomials
        for y in sys.elements() {
            for x in sys.elements() {
                let p = g.table.kl(x, y);
                if x == y || p.is_zero() {
                    continue;
                }
                ensure!(p.coeffs().iter().all(|&c| c >= 0), "{spec}: negative coefficient");
                let bound = (sys.length(y) - sys.length(x) - 1) / 2;
                ensure!(p.degree().unwrap() <= bound as usize, "{spec}: degree bound");
            }
        }
        // products do not depend on the reduced word
        let h = HeckeProducts::new(sys, &g.table);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            let x = Element(rng.gen_range(0..sys.order() as u32));
            let y = Element(rng.gen_range(0..sys.order() as u32));
            let word = common::random_reduced_word(sys, x, |n| rng.gen_range(0..n));
            ensure!(h.product_along_word(x, &word, y) == h.product(x, y), "{spec}: word dependence");
        }
    }
    for spec in ["B2", "B3", "B4"] {
        let g = build(spec);
        let w0 = g.sys.longest();
        ensure!(g.dec.a_function(Element::IDENTITY) == 0, "{spec}: a(e) != 0");
        ensure!(g.dec.a_function(w0) == g.sys.length(w0), "{spec}: a(w0) != l(w0)");
    }
    Ok("B3/B4 partitions, inverse, w0 reversal, KL bounds, a constant, a(e) and a(w0) on B2-B4, 200 word pairs".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("B3 golden", criterion_1, Duration::from_secs(5)),
        ("B4 golden", criterion_2, Duration::from_secs(60)),
        ("nice-cell predicates", criterion_3, Duration::from_secs(15 * 60)),
        ("H-cell and rank-2 classification", criterion_4, Duration::from_secs(1)),
        ("dihedral consistency", criterion_5, Duration::from_secs(10)),
        ("ADE census", criterion_6, Duration::from_secs(120)),
        ("structural properties", criterion_7, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *budget => Err(format!("{msg}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {} [PASS] {name}: {msg} ({took:.2?}, budget {budget:?}, exact)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", criteria.len());
}
