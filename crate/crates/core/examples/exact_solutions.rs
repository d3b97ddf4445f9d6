//! The exact-solution catalog, with each pair checked against both
//! equations, plus a symmetry image of one of them.

use fdsym::expr::Expr;
use fdsym::opcat::GroupElement;
use fdsym::solcat::{apply_group, lie_solution, solution_catalog};

fn main() {
    for s in solution_catalog() {
        let r = s.verify().expect("evaluable");
        println!("{:<22} {:?}  u = {}", s.id(), r.verdict, s.u.expr);
    }

    let s = lie_solution(6, 0, 0).expect("catalog entry");
    let g = GroupElement::g1([Expr::int(1), Expr::int(-2), Expr::int(3), Expr::int(2)]).expect("invertible");
    let image = apply_group(&g, &s).expect("maps");
    println!("\nimage of {} under {g:?}:\n    u = {}\n    verified: {:?}", s.id(), image.u.expr, image.verify().unwrap().verdict);
}
