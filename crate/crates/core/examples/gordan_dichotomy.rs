//! Either `Mx = 0` has a nonzero nonnegative solution or some `yᵀM` is
//! strictly positive. Prints the branch and re-checks the vector.

use toa::linear::{gordan, IntMatrix};

fn main() {
    let cases: [&[&[i64]]; 3] = [&[&[1, -1]], &[&[1, 2], &[3, 1]], &[&[2, -1, 0], &[-1, 2, -1]]];
    for rows in cases {
        let m = IntMatrix::from_i64(rows).expect("rectangular");
        let r = gordan(&m);
        let v: Vec<String> = r.vector().iter().map(ToString::to_string).collect();
        println!("{rows:?}: {} ({}) verified={}", r.branch_name(), v.join(" "), r.verify(&m));
    }
}
