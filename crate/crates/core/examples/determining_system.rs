//! Determining equations for operators with tau = 1, for a few choices of
//! the flux function F(v_x) in v_t = F(v_x) v_xx.

use fdsym::eqcat::{derive_determining_tau1, reference_tau1_system, restrict_v_independent, systems_equivalent};
use fdsym::expr::ex;

fn main() {
    for f in ["1/v_x", "1", "v_x^(-2)"] {
        let sys = derive_determining_tau1(&ex(f)).expect("rational in v_x");
        println!("F = {f}");
        for r in &sys.residuals {
            println!("    {r} = 0");
        }
        if f == "1/v_x" {
            println!("    matches reference: {}", systems_equivalent(&sys, &reference_tau1_system()));
            let eta = restrict_v_independent(&sys);
            println!("    with eta free of v: {} equations", eta.residuals.len());
        }
    }
}
