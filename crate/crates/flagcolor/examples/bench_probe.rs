// Rough timing probe for the heavy solves; not part of the test suite.
use std::time::Instant;

use flagcolor::families::{build, FamilySpec};
use flagcolor::flags::{flag_position, labeled_vertex, FlagId};
use flagcolor::graph::{Color, Move};
use flagcolor::reduction::{build_reduction, PositiveCnf};
use flagcolor::solver::Solver;

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    println!("{label}: {:?}", t.elapsed());
    out
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("all");

    if which == "all" || which == "families" {
        let s = Solver::new();
        timed("stars 0..=30", || {
            for i in 0..=30 {
                let p = build(&FamilySpec::Star(i)).unwrap();
                s.grundy(&p).unwrap();
            }
        });
        timed("paths 0..=18", || {
            for x in 0..=18 {
                s.grundy(&build(&FamilySpec::Path(x)).unwrap()).unwrap();
            }
        });
        timed("diamonds p<=7 d<=5", || {
            for p in 0..=7 {
                for d in 0..=5 {
                    s.grundy(&build(&FamilySpec::Diamond(p, d)).unwrap()).unwrap();
                }
            }
        });
        timed("brooms i<=8 l<=10", || {
            for i in 0..=8 {
                for l in 0..=10 {
                    s.grundy(&build(&FamilySpec::Broom(i, l)).unwrap()).unwrap();
                }
            }
        });
        timed("bipartite m,n<=4", || {
            for m in 1..=4 {
                for n in 1..=4 {
                    s.outcome(&build(&FamilySpec::CompleteBipartite(m, n)).unwrap()).unwrap();
                }
            }
        });
        println!("table entries: {}", s.stats().entries);
    }

    if which == "all" || which == "routes" {
        let s = Solver::new();
        timed("routes all categories i,j<=5 k<=4", || {
            let mut cells = 0;
            for i in 0..=5u32 {
                for j in 0..=5u32 {
                    for k in 0..=4u32 {
                        let mut lengths = vec![0];
                        lengths.extend(std::iter::repeat(2).take(i as usize));
                        lengths.extend(std::iter::repeat(4).take(j as usize));
                        lengths.extend(std::iter::repeat(6).take(k as usize));
                        if lengths.iter().any(|&l| l > 0) {
                            s.grundy(&build(&FamilySpec::Route(lengths)).unwrap()).unwrap();
                            cells += 1;
                        }
                        let mut lengths = vec![];
                        lengths.extend(std::iter::repeat(2).take(i as usize));
                        lengths.extend(std::iter::repeat(4).take(j as usize));
                        lengths.extend(std::iter::repeat(6).take(k as usize));
                        if !lengths.is_empty() {
                            s.grundy(&build(&FamilySpec::Route(lengths)).unwrap()).unwrap();
                            cells += 1;
                        }
                        if k == 0 {
                            let mut lengths = vec![1];
                            lengths.extend(std::iter::repeat(3).take(i as usize));
                            lengths.extend(std::iter::repeat(5).take(j as usize));
                            s.grundy(&build(&FamilySpec::Route(lengths)).unwrap()).unwrap();
                            cells += 1;
                            let mut lengths = vec![];
                            lengths.extend(std::iter::repeat(3).take(i as usize));
                            lengths.extend(std::iter::repeat(5).take(j as usize));
                            if !lengths.is_empty() {
                                s.grundy(&build(&FamilySpec::Route(lengths)).unwrap()).unwrap();
                                cells += 1;
                            }
                        }
                    }
                }
            }
            println!("cells solved: {cells}");
        });
        println!("table entries: {}", s.stats().entries);
    }

    if which == "all" || which == "us" {
        let s = Solver::new();
        let us = flag_position(FlagId::Us);
        let outcome = timed("us outcome", || s.outcome(&us).unwrap());
        println!("us outcome: {outcome}, entries {}", s.stats().entries);
    }

    if which == "all" || which == "azores" {
        let s = Solver::new();
        let az = flag_position(FlagId::Azores);
        let shield = labeled_vertex(FlagId::Azores, "shield").unwrap();
        // blue is normalized id 2 (white < red < blue < yellow by registry id)
        let child = az.apply_move(Move { vertex: shield, new_color: Color(2) }).unwrap();
        let out = timed("azores shield->blue child outcome", || s.outcome(&child).unwrap());
        println!("child outcome: {out}, entries {}", s.stats().entries);
    }

    if which == "azores-full" {
        let s = Solver::new();
        let (az, palette, labels) = flagcolor::flags::flag_data(FlagId::Azores);
        println!("palette: {palette:?}");
        let outcome = timed("azores outcome", || s.outcome(&az).unwrap());
        println!("azores outcome: {outcome}, entries {}", s.stats().entries);
        let wins = timed("azores winning moves", || s.winning_moves(&az).unwrap());
        for (m, _) in &wins {
            println!(
                "winning: vertex {} ({:?}) -> color {}",
                m.vertex, labels[m.vertex], m.new_color
            );
        }
        println!("entries {}", s.stats().entries);
    }

    if which == "all" || which == "gadget" {
        let s = Solver::new();
        let f = PositiveCnf::new(3, vec![vec![1, 2], vec![2, 3]]).unwrap();
        let g = build_reduction(&f).unwrap();
        println!("gadget n = {}", g.position.vertex_count());
        let out = timed("gadget outcome k=3 n=2", || s.outcome(&g.position).unwrap());
        println!("gadget outcome: {out}, entries {}", s.stats().entries);
    }

    if which == "all" || which == "spectrum" {
        let s = Solver::new();
        let cfg = flagcolor::search::SearchConfig::new(7, 2);
        let report = timed("spectrum n<=7 2 colors", || {
            flagcolor::search::spectrum(&cfg, &s).unwrap()
        });
        for l in &report.levels {
            println!(
                "n={} positions={} merged={} max=*{}",
                l.vertex_count, l.positions, l.swap_merged_positions, l.max_grundy
            );
        }
    }
}
