//! `play`: a terminal game loop. Shows the position and its legal moves,
//! reads a move (or `hint` / `values` / `quit`), optionally lets the engine
//! answer, and declares the last mover the winner.

use std::io::{BufRead, Write};
use std::path::Path;

use flagcolor::graph::{Move, Position};
use flagcolor::parse::Palette;

use crate::CliError;

pub fn run(path: &Path, start: (Position, Palette), engine: bool) -> Result<(), CliError> {
    let solver = crate::make_solver()?;
    let (mut position, mut palette) = start;
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    let mut player = 1u8;
    let mut last_mover: Option<u8> = None;

    println!("playing {} ({} vertices)", path.display(), position.vertex_count());
    loop {
        if position.is_terminal() {
            println!("game over: one region remains.");
            match last_mover {
                Some(p) => println!("player {p} made the last move and wins."),
                None => println!("player 1 has no move and loses."),
            }
            return Ok(());
        }
        show(&position, &palette);
        let moves = position.legal_moves();
        for (i, m) in moves.iter().enumerate() {
            println!(
                "  {}) vertex {} -> {}",
                i + 1,
                m.vertex,
                crate::color_name(&palette, m.new_color.0)
            );
        }
        print!("player {player}> ");
        std::io::stdout().flush().ok();
        let line = match lines.next() {
            Some(Ok(l)) => l,
            _ => {
                println!();
                println!("end of input; session closed.");
                return Ok(());
            }
        };
        let cmd = line.trim();
        match cmd {
            "" => continue,
            "quit" | "q" => {
                println!("session closed.");
                return Ok(());
            }
            "hint" => {
                let wins = solver.winning_moves(&position)?;
                if wins.is_empty() {
                    println!("no winning move exists from here.");
                } else {
                    for (m, _) in wins {
                        println!(
                            "winning: vertex {} -> {}",
                            m.vertex,
                            crate::color_name(&palette, m.new_color.0)
                        );
                    }
                }
                continue;
            }
            "values" => {
                for m in &moves {
                    let child = position.apply_move(*m).expect("legal move");
                    let v = solver.grundy(&child)?;
                    println!(
                        "  vertex {} -> {}: option value {}",
                        m.vertex,
                        crate::color_name(&palette, m.new_color.0),
                        v
                    );
                }
                continue;
            }
            _ => {}
        }
        let chosen = match cmd.parse::<usize>() {
            Ok(k) if k >= 1 && k <= moves.len() => moves[k - 1],
            _ => {
                println!("enter a move number (1..{}), `hint`, `values`, or `quit`.", moves.len());
                continue;
            }
        };
        println!(
            "player {player} plays vertex {} -> {}.",
            chosen.vertex,
            crate::color_name(&palette, chosen.new_color.0)
        );
        apply(&mut position, &mut palette, chosen);
        last_mover = Some(player);
        player = if player == 1 { 2 } else { 1 };

        if engine && !position.is_terminal() {
            let wins = solver.winning_moves(&position)?;
            let reply = wins
                .first()
                .map(|(m, _)| *m)
                .unwrap_or_else(|| position.legal_moves()[0]);
            println!(
                "player {player} (engine) answers vertex {} -> {}.",
                reply.vertex,
                crate::color_name(&palette, reply.new_color.0)
            );
            apply(&mut position, &mut palette, reply);
            last_mover = Some(player);
            player = if player == 1 { 2 } else { 1 };
        }
    }
}

fn show(p: &Position, palette: &Palette) {
    println!("position ({} vertices):", p.vertex_count());
    let g = p.graph();
    for v in 0..g.vertex_count() {
        let nbrs: Vec<String> = g.neighbors(v).iter().map(|w| w.to_string()).collect();
        println!(
            "  {v}: {} -- [{}]",
            crate::color_name(palette, g.color(v).0),
            nbrs.join(", ")
        );
    }
}

/// Apply a move and remap the palette: the moved vertex's old color may
/// vanish, shifting every higher color id down by one.
fn apply(position: &mut Position, palette: &mut Palette, m: Move) {
    let g = position.graph();
    let old_color = g.color(m.vertex);
    let old_count = g.colors().iter().filter(|c| **c == old_color).count();
    let next = position.apply_move(m).expect("legal move");
    if old_count == 1 {
        palette.remove(old_color.0 as usize);
    }
    *position = next;
}
