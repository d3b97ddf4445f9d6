//! Operators of the potential equation projected to operators of the fast
//! diffusion equation through v_x = u.

use fdsym::eqcat::fast_diffusion;
use fdsym::expr::ex;
use fdsym::jets::is_reduction_operator;
use fdsym::opcat::{potential_operator, potential_to_nogo, POTENTIAL};

fn main() {
    let l = fast_diffusion();
    for (name, theta) in POTENTIAL {
        let q = potential_to_nogo(&potential_operator(theta), &ex("1/u")).expect("projects");
        let r = is_reduction_operator(&l, &q).expect("criterion evaluates");
        println!("{name}: theta = {theta}\n    {q}\n    reduction operator of u_t = (u_x/u)_x: {:?}", r.verdict);
    }
}
