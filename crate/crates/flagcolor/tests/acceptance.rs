//! Acceptance suite: one test per verification criterion, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them).
//!
//! Criterion 8 is split in two: the flag outcomes/values, and the published
//! winning-move claim for the Azores. The latter is asserted exactly as
//! published and is expected to fail: on the flag's drawn region graph the
//! engine (cross-validated against an independent solver) finds the
//! shield-to-blue option loses. See the repository notes on the Azores
//! winning-move discrepancy.

use std::sync::OnceLock;
use std::time::Instant;

use flagcolor::families::{
    bipartite_outcome, broom_erratum, broom_value, build, categorize, diamond_value,
    matching_specs, path_value, route_errata, route_value, star_value, FamilySpec, RouteCategory,
};
use flagcolor::flags::{flag_position, labeled_vertex, FlagId};
use flagcolor::graph::{Color, Move, Position};
use flagcolor::reduction::{build_reduction, correspondence_check, GadgetRole, PositiveCnf};
use flagcolor::search::{enumerate_positions, spectrum, SearchConfig};
use flagcolor::solver::{grundy_unmemoized, mex, Nimber, Outcome, Solver};

fn solver() -> &'static Solver {
    static SOLVER: OnceLock<Solver> = OnceLock::new();
    SOLVER.get_or_init(Solver::new)
}

fn report(criterion: &str, what: &str, start: Instant) {
    println!("criterion {criterion} PASS ({:.2?}): {what}", start.elapsed());
}

#[test]
fn c01_star_values() {
    let t = Instant::now();
    for i in 0..=30 {
        let p = build(&FamilySpec::Star(i)).unwrap();
        assert_eq!(solver().grundy(&p).unwrap(), star_value(i), "star i={i}");
    }
    report("1", "stars 0..=30 match the closed form exactly", t);
}

#[test]
fn c02_diamond_table() {
    let t = Instant::now();
    for p in 0..=7 {
        for d in 0..=5 {
            let pos = build(&FamilySpec::Diamond(p, d)).unwrap();
            assert_eq!(solver().grundy(&pos).unwrap(), diamond_value(p, d), "diamond ({p},{d})");
        }
    }
    report("2", "diamond table p<=7, d<=5 (48 cells incl. periodic tails) exact", t);
}

#[test]
fn c03_path_values() {
    let t = Instant::now();
    for x in 0..=18 {
        let p = build(&FamilySpec::Path(x)).unwrap();
        assert_eq!(solver().grundy(&p).unwrap(), path_value(x), "path x={x}");
    }
    report("3", "paths of length 0..=18 match *(x mod 3) exactly", t);
}

#[test]
fn c04_broom_table() {
    let t = Instant::now();
    let mut errata_hits = Vec::new();
    for i in 0..=8 {
        for l in 0..=10 {
            let p = build(&FamilySpec::Broom(i, l)).unwrap();
            let engine = solver().grundy(&p).unwrap();
            let printed = broom_value(i, l);
            if engine == printed {
                continue;
            }
            // A disagreement must be an adjudicated erratum carrying both the
            // printed and the computed value.
            let erratum = broom_erratum(i, l).unwrap_or_else(|| {
                panic!("broom ({i},{l}): engine {engine} vs printed {printed}, not adjudicated")
            });
            assert_eq!(erratum.printed, printed, "broom erratum printed value at ({i},{l})");
            assert_eq!(erratum.computed, engine, "broom erratum computed value at ({i},{l})");
            errata_hits.push((i, l));
        }
    }
    // the *3 base-row value that the errata row generalizes
    assert_eq!(broom_value(2, 2), Nimber(3));
    assert_eq!(
        errata_hits,
        vec![(4, 2), (6, 2), (8, 2)],
        "exactly the adjudicated even-row cells disagree"
    );
    report(
        "4",
        "broom table i<=8, l<=10 (99 cells): exact except the three documented \
         printed-table errata at even i>=4, l=2 (printed *2, computed *3)",
        t,
    );
}

#[test]
fn c05_bipartite_outcomes() {
    let t = Instant::now();
    for m in 1..=4 {
        for n in 1..=4 {
            let p = build(&FamilySpec::CompleteBipartite(m, n)).unwrap();
            assert_eq!(
                solver().outcome(&p).unwrap(),
                bipartite_outcome(m, n),
                "bipartite ({m},{n})"
            );
        }
    }
    report("5", "complete bipartite outcomes m,n in 1..=4 exact", t);
}

/// Every route-category cell in the acceptance ranges, with the degenerate
/// (disconnected) combinations skipped.
fn route_cells() -> Vec<RouteCategory> {
    let mut cells = Vec::new();
    for i in 0..=5u32 {
        for j in 0..=5u32 {
            for k in 0..=4u32 {
                if i + j + k > 0 {
                    cells.push(RouteCategory::EvenMerged { two: i, four: j, six: k });
                    cells.push(RouteCategory::EvenDistinct { two: i, four: j, six: k });
                }
            }
            cells.push(RouteCategory::OddAdjacent { three: i, five: j });
            if i + j > 0 {
                cells.push(RouteCategory::OddNonadjacent { three: i, five: j });
            }
        }
    }
    cells
}

#[test]
fn c06_route_tables_vs_engine() {
    let t = Instant::now();
    let mut checked = 0;
    for cat in route_cells() {
        let oracle = route_value(&cat).unwrap();
        let p = build(&FamilySpec::Route(cat.lengths())).unwrap();
        let engine = solver().grundy(&p).unwrap();
        if engine != oracle {
            let excused = route_errata()
                .iter()
                .any(|e| e.category == cat && e.printed == oracle && e.computed == engine);
            assert!(
                excused,
                "route {cat:?}: engine {engine} vs printed {oracle}, not in the errata list"
            );
        }
        checked += 1;
    }
    assert!(route_errata().is_empty(), "expected an empty errata list");
    report(
        "6",
        &format!("route tables: engine equals printed values on all {checked} cells; errata empty"),
        t,
    );
}

#[test]
fn c07_route_zero_cells() {
    let t = Instant::now();
    for cat in route_cells() {
        let zero_per_table = route_value(&cat).unwrap().0 == 0;
        let p = build(&FamilySpec::Route(cat.lengths())).unwrap();
        let zero_per_engine = solver().outcome(&p).unwrap() == Outcome::P;
        assert_eq!(zero_per_engine, zero_per_table, "zero cell mismatch at {cat:?}");
    }
    report("7", "route zero cells found by the engine equal the tables' zeros", t);
}

#[test]
fn c08_flag_outcomes() {
    let t = Instant::now();
    let s = solver();

    let canada = flag_position(FlagId::Canada);
    assert_eq!(s.outcome(&canada).unwrap(), Outcome::N);
    assert_eq!(s.grundy(&canada).unwrap(), Nimber(1));

    let france = flag_position(FlagId::France);
    assert_eq!(s.outcome(&france).unwrap(), Outcome::P);
    assert_eq!(s.grundy(&france).unwrap(), Nimber(0));

    let maine = flag_position(FlagId::Maine);
    assert_eq!(s.outcome(&maine).unwrap(), Outcome::P);
    assert_eq!(s.grundy(&maine).unwrap(), Nimber(0));

    let us = flag_position(FlagId::Us);
    assert_eq!(us.vertex_count(), 64);
    assert_eq!(s.outcome(&us).unwrap(), Outcome::P, "US flag should be a P-position");

    // Pendant-counter structure: answering a star move with another star
    // move returns to a position of the same outcome as the original.
    let star_vertex = labeled_vertex(FlagId::Us, "star1").unwrap();
    let blue = Color(2);
    let after_one = us.apply_move(Move { vertex: star_vertex, new_color: blue }).unwrap();
    let next_star = (0..after_one.vertex_count())
        .find(|&v| {
            after_one.graph().degree(v) == 1
                && after_one.graph().color(v) == Color(0)
                && after_one
                    .graph()
                    .neighbors(v)
                    .iter()
                    .all(|&w| after_one.graph().color(w as usize) == blue)
        })
        .expect("another white pendant on the union remains");
    let after_two = after_one.apply_move(Move { vertex: next_star, new_color: blue }).unwrap();
    assert_eq!(
        s.outcome(&after_two).unwrap(),
        Outcome::P,
        "48-pendant position should share the original's outcome"
    );

    let azores = flag_position(FlagId::Azores);
    assert_eq!(azores.vertex_count(), 51);
    assert_eq!(s.outcome(&azores).unwrap(), Outcome::N, "Azores should be an N-position");

    report(
        "8",
        "flag outcomes: canada *1/N, france 0/P, maine 0/P, US P (with pendant counter), azores N",
        t,
    );
}

#[test]
fn c08_azores_published_winning_move() {
    // Asserted exactly as published: recoloring the red shield blue should
    // leave a Grundy-0 position. The engine, cross-validated against an
    // independent solver and a mechanical re-extraction of the drawn graph,
    // finds this option is in N (the true winning moves recolor a blue
    // quina white or a castle red), so this check documents a discrepancy
    // rather than passing.
    let t = Instant::now();
    let s = solver();
    let azores = flag_position(FlagId::Azores);
    let shield = labeled_vertex(FlagId::Azores, "shield").unwrap();
    let blue = Color(2);
    let child = azores.apply_move(Move { vertex: shield, new_color: blue }).unwrap();
    let outcome = s.outcome(&child).unwrap();
    assert_eq!(
        outcome,
        Outcome::P,
        "published claim: shield->blue is a winning first move (child must be Grundy 0); \
         engine verdict is {outcome} -- see the decisions notes on the Azores discrepancy"
    );
    report("8 (azores shield claim)", "shield->blue option has Grundy 0", t);
}

/// All positive CNFs with k variables and at most `max_clauses` distinct
/// clauses, up to variable renaming.
fn cnfs_up_to_renaming(k: u32, max_clauses: usize) -> Vec<PositiveCnf> {
    let vars: Vec<u32> = (1..=k).collect();
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1 << k) {
        subsets.push(vars.iter().copied().filter(|v| mask & (1 << (v - 1)) != 0).collect());
    }
    fn perms(k: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in perms(k - 1) {
            for i in 0..=rest.len() {
                let mut p = rest.clone();
                p.insert(i, k);
                out.push(p);
            }
        }
        out
    }
    let all_perms = perms(k);
    let canon = |clauses: &[Vec<u32>]| -> Vec<Vec<u32>> {
        all_perms
            .iter()
            .map(|perm| {
                let mut renamed: Vec<Vec<u32>> = clauses
                    .iter()
                    .map(|c| {
                        let mut r: Vec<u32> =
                            c.iter().map(|&v| perm[(v - 1) as usize]).collect();
                        r.sort_unstable();
                        r
                    })
                    .collect();
                renamed.sort();
                renamed
            })
            .min()
            .unwrap()
    };

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut push = |clauses: Vec<Vec<u32>>, out: &mut Vec<PositiveCnf>| {
        if seen.insert(canon(&clauses)) {
            out.push(PositiveCnf::new(k, clauses).unwrap());
        }
    };
    push(Vec::new(), &mut out);
    if max_clauses >= 1 {
        for c in &subsets {
            push(vec![c.clone()], &mut out);
        }
    }
    if max_clauses >= 2 {
        for (i, a) in subsets.iter().enumerate() {
            for b in subsets.iter().skip(i + 1) {
                push(vec![a.clone(), b.clone()], &mut out);
            }
        }
    }
    out
}

#[test]
fn c09_reduction_gadgets() {
    let t = Instant::now();
    let s = solver();
    let mut instances = 0;
    for k in 1..=3u32 {
        for f in cnfs_up_to_renaming(k, 2) {
            let n = f.clauses().len();
            let gadget = build_reduction(&f).unwrap();
            let p = &gadget.position;

            // Structural invariants.
            let clause_nodes =
                gadget.roles.iter().filter(|r| matches!(r, GadgetRole::Clause(_))).count();
            assert_eq!(clause_nodes, 4 * n + 3, "clause node count for k={k} n={n}");
            assert_eq!(p.vertex_count(), 2 + k as usize + 5 * (4 * n + 3) + 1);
            assert!(p.graph().is_proper());
            assert_eq!(p.color_count(), 2);
            assert!(p.graph().is_connected());
            let variables =
                gadget.roles.iter().filter(|r| matches!(r, GadgetRole::Variable(_))).count();
            assert_eq!(variables, k as usize);

            // Proof claim: every non-variable first move yields an N position.
            let rep = correspondence_check(&f, s).unwrap();
            assert!(
                rep.all_non_variable_moves_yield_n,
                "non-variable move with a P child for k={k} clauses={:?}",
                f.clauses()
            );
            instances += 1;
        }
    }
    report(
        "9",
        &format!("reduction: structure and non-variable-move claim hold on {instances} CNFs"),
        t,
    );
}

#[test]
fn c10_search_spectrum() {
    let t = Instant::now();
    let cfg = SearchConfig::new(7, 2);
    let report_a = {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        pool.install(|| spectrum(&cfg, &Solver::new()).unwrap())
    };
    let report_b = {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        pool.install(|| spectrum(&cfg, &Solver::new()).unwrap())
    };
    assert_eq!(
        serde_json::to_string(&report_a).unwrap(),
        serde_json::to_string(&report_b).unwrap(),
        "spectrum must not depend on the thread count"
    );
    for level in &report_a.levels {
        assert!(level.max_grundy <= 13, "value above 13 at n={}", level.vertex_count);
    }

    // Every family-shaped enumerated position matches its closed-form oracle.
    let s = solver();
    let mut family_checks = 0;
    for p in enumerate_positions(&cfg).unwrap() {
        for spec in matching_specs(&p) {
            let engine = s.grundy(&p).unwrap();
            match &spec {
                FamilySpec::Star(i) => assert_eq!(engine, star_value(*i), "{spec:?}"),
                FamilySpec::Path(x) => assert_eq!(engine, path_value(*x), "{spec:?}"),
                FamilySpec::Broom(i, l) => match broom_erratum(*i, *l) {
                    Some(e) => assert_eq!(engine, e.computed, "{spec:?} (erratum cell)"),
                    None => assert_eq!(engine, broom_value(*i, *l), "{spec:?}"),
                },
                FamilySpec::Diamond(pd, d) => {
                    assert_eq!(engine, diamond_value(*pd, *d), "{spec:?}")
                }
                FamilySpec::CompleteBipartite(m, n) => {
                    let out = if engine.0 == 0 { Outcome::P } else { Outcome::N };
                    assert_eq!(out, bipartite_outcome(*m, *n), "{spec:?}");
                }
                FamilySpec::Route(lengths) => match categorize(lengths) {
                    Ok(cat) => {
                        assert_eq!(engine, route_value(&cat).unwrap(), "{spec:?} as {cat:?}")
                    }
                    Err(_) => continue, // outside the table alphabet
                },
            }
            family_checks += 1;
        }
    }
    assert!(family_checks >= 60, "expected many family-shaped positions, saw {family_checks}");

    let totals: Vec<usize> = report_a.levels.iter().map(|l| l.positions).collect();
    report(
        "10",
        &format!(
            "spectrum n<=7 (counts {totals:?}), thread-invariant, all values <= 13, \
             {family_checks} family-shape oracle checks"
        ),
        t,
    );
}

#[test]
fn c11_property_suites() {
    let t = Instant::now();

    // mex identities.
    assert_eq!(mex([]), 0);
    assert_eq!(mex([0, 1, 3]), 2);
    assert_eq!(mex([1, 2]), 0);
    assert_eq!(mex([0, 0, 2]), 1);

    // Isomorphism invariance: 200 random relabelings across random <=8-vertex
    // positions.
    let mut state = 0x1234_5678_9abc_def1u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let s = solver();
    let mut relabelings = 0;
    while relabelings < 200 {
        let n = 2 + (rng() % 7) as usize; // 2..=8
        let mut colors: Vec<u8> = vec![0; n];
        let mut depth = vec![0usize; n];
        let mut edges = Vec::new();
        for v in 1..n {
            let u = (rng() % v as u64) as usize;
            depth[v] = depth[u] + 1;
            colors[v] = (depth[v] % 2) as u8;
            edges.push((u as u32, v as u32));
        }
        for _ in 0..(rng() % 4) {
            let a = (rng() % n as u64) as usize;
            let b = (rng() % n as u64) as usize;
            if a != b && colors[a] != colors[b] {
                edges.push((a.min(b) as u32, a.max(b) as u32));
            }
        }
        let g = flagcolor::graph::ColoredGraph::new(
            colors.iter().map(|&c| Color(c)).collect(),
            &edges,
        )
        .unwrap();
        let p = Position::from_graph(&g).unwrap();
        let value = s.grundy(&p).unwrap();
        for _ in 0..4 {
            let m = p.vertex_count();
            let mut perm: Vec<u32> = (0..m as u32).collect();
            for i in (1..m).rev() {
                let j = (rng() % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }
            let q = p.permuted(&perm);
            assert_eq!(s.grundy(&q).unwrap(), value, "grundy must be isomorphism-invariant");
            relabelings += 1;
        }
    }

    // Memo soundness: with and without the table on every 2-colored position
    // up to 6 vertices.
    let mut memo_checks = 0;
    for p in enumerate_positions(&SearchConfig::new(6, 2)).unwrap() {
        assert_eq!(s.grundy(&p).unwrap(), grundy_unmemoized(&p), "memo changed a value");
        memo_checks += 1;
    }
    assert_eq!(memo_checks, 45, "2-colored positions up to 6 vertices");

    // Contraction idempotence on a family sample.
    for spec in [
        FamilySpec::Star(6),
        FamilySpec::Broom(3, 4),
        FamilySpec::Route(vec![2, 4, 6]),
        FamilySpec::Diamond(2, 2),
    ] {
        let p = build(&spec).unwrap();
        let again = flagcolor::graph::contract(p.graph()).unwrap();
        assert_eq!(p.canonical_key(), again.canonical_key());
    }

    report(
        "11",
        &format!(
            "mex identities, 200 isomorphism relabelings, memo on/off on {memo_checks} positions, \
             contraction idempotence"
        ),
        t,
    );
}
