//! Finite differences against exact solutions: both schemes, three
//! refinements each, written as CSV.

use fdsym::eqcat::{fast_diffusion, potential_fast_diffusion};
use fdsym::fdsim::{convergence_study, Grid, Law, Scheme, SIGMA};
use fdsym::solcat::lie_solution;

fn main() {
    let lie4 = lie_solution(4, 1, 0).expect("catalog entry");
    let l = fast_diffusion();
    let x = (-1.0, 1.0);
    let t = (1.0, 1.5);

    let base = Grid::stable(Law::Diffusion, &lie4.u, x, 21, t, SIGMA).expect("grid");
    let r = convergence_study(&l, &lie4.u, &base, 3, Scheme::Explicit).expect("runs");
    println!("# {} u, explicit (observed order {:.3})\n{}", lie4.id(), r.observed_order().unwrap(), r.to_csv());

    let base = Grid::new(x, 21, t, 0.01, SIGMA).expect("grid");
    let r = convergence_study(&l, &lie4.u, &base, 3, Scheme::ImplicitNewton).expect("runs");
    println!("# {} u, Crank-Nicolson (observed order {:.3})\n{}", lie4.id(), r.observed_order().unwrap(), r.to_csv());

    let base = Grid::stable(Law::Filtration, &lie4.v, x, 21, t, SIGMA).expect("grid");
    let r = convergence_study(&potential_fast_diffusion(), &lie4.v, &base, 3, Scheme::Explicit).expect("runs");
    println!("# {} v, explicit (observed order {:.3})\n{}", lie4.id(), r.observed_order().unwrap(), r.to_csv());
}
