//! Parsing, differentiation and the randomized zero test.

use fdsym::expr::{differentiate, ex, is_zero, parse};

fn main() {
    let e = parse("u^2 * sin(x) / (1 + t^2)").expect("valid input");
    println!("e       = {e}");
    println!("de/dx   = {}", differentiate(&e, "x"));
    println!("de/du   = {}", differentiate(&e, "u"));

    for z in ["sin(x)^2 + cos(x)^2 - 1", "tanh(x) - sinh(x)/cosh(x)", "exp(x + t) - exp(x)*exp(t) + 1/10^8"] {
        let r = is_zero(&ex(z)).expect("evaluable");
        println!("{z:<36} {:?} (max |.| = {:.1e})", r.verdict, r.max_abs);
    }
}
