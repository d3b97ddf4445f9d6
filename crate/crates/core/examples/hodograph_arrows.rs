//! The hodograph correspondence between catalog solutions, evaluated
//! numerically by inverting x -> v(t, x).

use fdsym::solcat::{apply_hodograph, arrow_table, check_arrow, lie_solution, PairSampler};

fn main() {
    for a in arrow_table() {
        let r = check_arrow(&a).expect("arrow evaluates");
        println!("{:<16} {:?}  u err {:.1e}, v spread {:.1e}  {}", a.id, r.verdict, r.max_u_error, r.v_spread, a.label);
    }

    let p = lie_solution(6, 0, 0).expect("catalog entry");
    let h = apply_hodograph(p.clone()).expect("hodograph");
    let t = -1.5;
    let (a, b) = h.x_interval(t).expect("nonempty");
    println!("\nhodograph of {} at t = {t} on ({a:.3}, {b:.3}):", p.id());
    for k in 1..5 {
        let x = a + (b - a) * k as f64 / 5.0;
        println!("    x = {x:>8.4}  u = {:>10.6}  v = {:>10.6}", h.u_at(t, x).unwrap(), h.v_at(t, x).unwrap());
    }
}
