//! Every family of reduction operators of the potential equation, checked
//! by the conditional-invariance criterion.

use fdsym::eqcat::potential_fast_diffusion;
use fdsym::jets::is_reduction_operator;
use fdsym::opcat::{theorem1_operator, OperatorFamily};

fn main() {
    let l = potential_fast_diffusion();
    for fam in OperatorFamily::all() {
        let q = theorem1_operator(&fam).expect("valid family");
        let r = is_reduction_operator(&l, &q).expect("criterion evaluates");
        println!("{:<28} {:?}  {q}", fam.to_string(), r.verdict);
    }
}
