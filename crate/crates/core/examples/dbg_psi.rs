use geocube_core::chain::*;
use geocube_core::complex::generate::*;
use geocube_core::complex::subdivide::*;
use geocube_core::products::*;

fn main() {
    let c = cube_boundary(3).unwrap();
    let mut shown = 0;
    for cube in c.iter_faces() {
        let fstar = Chain::single(cube.dim, cube.key.clone());
        let psi = psi_dual(&c, &fstar, Coefficients::Integer).unwrap();
        let lhs = sd_boundary(&c, &psi);
        let dstar = coboundary_of_cochain(&c, &fstar);
        let rhs = psi_dual(&c, &dstar, Coefficients::Integer).unwrap();
        if lhs != rhs && shown < 2 {
            shown += 1;
            println!("== F = {:?} (dim {})", cube.key, cube.dim);
            println!("psi(F*):");
            for (k, v) in psi.iter() { println!("   {k:?} -> {v}"); }
            println!("d psi(F*):");
            for (k, v) in lhs.iter() { println!("   {k:?} -> {v}"); }
            println!("psi(dF*):");
            for (k, v) in rhs.iter() { println!("   {k:?} -> {v}"); }
        }
    }
    if shown == 0 { println!("all faces agree"); }
}
