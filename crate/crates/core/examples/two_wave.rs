//! The two-wave solution: a difference of cotangents that collapses to a
//! single real quotient.

use fdsym::expr::{Compiled, Expr};
use fdsym::solcat::{catalog_matches, real_tuple_table, two_wave};

fn main() {
    let i = Expr::i();
    let p = [Expr::rational(1, 2) + &i, Expr::int(1), Expr::rational(1, 4) * &i, Expr::int(0)];
    let w = two_wave(&p[0], &p[1], &p[2], &p[3]).expect("nondegenerate");
    println!("u      = {}\nclosed = {}", w.waves.expr, w.closed);
    let (a, b) = (Compiled::new(&w.waves.expr), Compiled::new(&w.closed));
    for (t, x) in [(0.1, 0.2), (0.3, -0.4), (0.05, 0.9)] {
        if let (Ok(u), Ok(c)) = (w.waves.eval_expr(&a, t, x), w.waves.eval_expr(&b, t, x)) {
            println!("    ({t}, {x}): {u:.6} vs {c:.6}");
        }
    }

    println!("\nreal tuples:");
    for p in real_tuple_table() {
        let w = two_wave(&p[0], &p[1], &p[2], &p[3]).expect("nondegenerate");
        let p: Vec<_> = p.iter().map(|e| e.to_string()).collect();
        println!("    {p:?} matches {:?}\n        {}", catalog_matches(&w), w.closed);
    }
}
