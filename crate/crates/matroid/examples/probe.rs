use matroid::catalog;
use matroid::construct::two_bases_normalize;
use matroid::iso::has_minor_iso;
use std::time::Instant;

fn main() {
    for name in ["uniform-1-1", "uniform-1-2", "uniform-2-4", "mk4"] {
        let n0 = catalog::by_name(name).unwrap();
        let t0 = Instant::now();
        let out = two_bases_normalize(&n0).unwrap();
        let t_norm = t0.elapsed();
        println!(
            "{name}: normalize {:?}  n'={} r'={} bases={}",
            t_norm,
            out.n_prime.size(),
            out.n_prime.rank(),
            out.n_prime.bases().len()
        );
        let t1 = Instant::now();
        let w = has_minor_iso(&out.n_prime, &n0);
        let t_iso = t1.elapsed();
        match w {
            Ok(Some(w)) => println!("  minor found in {:?}: contract {:?} delete {:?}", t_iso, w.contract, w.delete),
            Ok(None) => println!("  NO MINOR FOUND in {:?} (bug!)", t_iso),
            Err(e) => println!("  error after {:?}: {e}", t_iso),
        }
    }
}
