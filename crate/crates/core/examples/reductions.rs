//! Reduction of the potential equation to ODEs with the operators' invariants,
//! and the witnesses that solve each ODE.

use fdsym::reduce::reduction_catalog;

fn main() {
    for r in reduction_catalog() {
        match r.verify() {
            Ok((ode, witnesses)) => {
                println!("{}: {} = 0", r.key, ode.residual);
                for (id, z) in witnesses {
                    println!("    {id} solves it: {:?}", z.verdict);
                }
            }
            Err(e) => println!("{}: {e}", r.key),
        }
    }
}
