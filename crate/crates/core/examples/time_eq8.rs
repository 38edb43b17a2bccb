use mfk_core::exactalg::WeightSystem;
use mfk_core::homotopy::{hom_homology_dims, DEFAULT_WINDOW_CAP};
use mfk_core::mfcore::koszul_stabilization;
use mfk_core::{Mode, Poly};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(8, |s| s.parse().unwrap());
    let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let f = (0..n).fold(Poly::zero(n), |acc, i| &acc + &Poly::var(n, i).pow(2));
    let dec: Vec<(Poly, usize)> = (0..n).map(|i| (Poly::var(n, i), i)).collect();
    let e = koszul_stabilization(&f, &vars, Mode::Rational, &dec, Some(&WeightSystem::standard(n, 2))).unwrap();
    let t0 = std::time::Instant::now();
    let t = hom_homology_dims(&e, &e, DEFAULT_WINDOW_CAP).unwrap();
    println!("n={n} totals={:?} in {:?}", t.totals(), t0.elapsed());
    for r in &t.rows {
        println!("{r:?}");
    }
}
