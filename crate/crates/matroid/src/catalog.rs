//! Named matroid generators used by the demos and tests.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{k_subsets, Subset, EMPTY};

/// The empty matroid U_{0,0}: empty ground set, bases = {∅}.
pub fn empty() -> Matroid {
    Matroid::from_masks_trusted(Some("empty".into()), Vec::new(), vec![EMPTY])
}

/// Uniform matroid U_{r,n} on labels "1".."n"; bases are all r-subsets.
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::PreconditionViolation(format!(
            "uniform({r},{n}): rank exceeds size"
        )));
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let bases: Vec<Subset> = k_subsets(n, r).collect();
    Matroid::from_masks_validated(Some(&format!("uniform-{r}-{n}")), labels, bases)
}

/// Lines of the Fano plane on points 1..7 (cyclic difference-set form).
fn fano_lines() -> Vec<[usize; 3]> {
    // {1,2,4} shifted cyclically mod 7
    (0..7)
        .map(|s| {
            let mut l = [1 + s % 7, 1 + (1 + s) % 7, 1 + (3 + s) % 7];
            l.sort_unstable();
            l
        })
        .collect()
}

fn rank3_on_lines(name: &str, n: usize, lines: &[[usize; 3]]) -> Matroid {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let line_masks: Vec<Subset> = lines
        .iter()
        .map(|l| Subset::from_indices(l.iter().map(|&p| p - 1)))
        .collect();
    let bases: Vec<Subset> = k_subsets(n, 3)
        .filter(|t| !line_masks.contains(t))
        .collect();
    Matroid::from_masks_validated(Some(name), labels, bases)
        .expect("catalog generator must produce a matroid")
}

/// The Fano plane F_7: rank 3, seven points, seven 3-point lines.
pub fn fano() -> Result<Matroid> {
    Ok(rank3_on_lines("fano", 7, &fano_lines()))
}

/// The dual F_7*.
pub fn fano_dual() -> Result<Matroid> {
    Ok(fano()?.dual().with_name(Some("fano-dual")))
}

/// The non-Fano matroid: F_7 with one circuit-hyperplane relaxed.
pub fn non_fano() -> Result<Matroid> {
    let mut lines = fano_lines();
    lines.sort_unstable();
    lines.pop(); // relax the lexicographically last line
    Ok(rank3_on_lines("non-fano", 7, &lines))
}

/// The cycle matroid M(K4): six edges, rank 3, four triangle circuits.
pub fn mk4() -> Result<Matroid> {
    let edges = ["12", "13", "14", "23", "24", "34"];
    let triangle = |a: &str, b: &str, c: &str| -> Subset {
        Subset::from_indices(
            [a, b, c]
                .iter()
                .map(|e| edges.iter().position(|x| x == e).unwrap()),
        )
    };
    let triangles = [
        triangle("12", "13", "23"),
        triangle("12", "14", "24"),
        triangle("13", "14", "34"),
        triangle("23", "24", "34"),
    ];
    let labels: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    let bases: Vec<Subset> = k_subsets(6, 3)
        .filter(|t| !triangles.contains(t))
        .collect();
    Matroid::from_masks_validated(Some("mk4"), labels, bases)
}

/// Look up a catalog matroid by name: `empty`, `fano`, `fano-dual`,
/// `non-fano`, `mk4`, or `uniform-R-N`. Underscores are accepted for
/// hyphens.
pub fn by_name(name: &str) -> Result<Matroid> {
    let norm = name.trim().to_ascii_lowercase().replace('_', "-");
    match norm.as_str() {
        "empty" => Ok(empty()),
        "fano" => fano(),
        "fano-dual" => fano_dual(),
        "non-fano" | "nonfano" => non_fano(),
        "mk4" => mk4(),
        _ => {
            if let Some(rest) = norm.strip_prefix("uniform-") {
                let parts: Vec<&str> = rest.split('-').collect();
                if parts.len() == 2 {
                    if let (Ok(r), Ok(n)) = (parts[0].parse(), parts[1].parse()) {
                        return uniform(r, n);
                    }
                }
            }
            Err(Error::PreconditionViolation(format!(
                "unknown catalog name {name:?}"
            )))
        }
    }
}

/// Small catalog sample used by the exhaustive test suites: the named
/// matroids plus a spread of uniform matroids, all within `max_size`.
pub fn test_suite(max_size: usize) -> Vec<Matroid> {
    let mut out = vec![empty()];
    let uniforms = [
        (0, 1),
        (1, 1),
        (1, 2),
        (1, 3),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 4),
        (3, 6),
        (4, 5),
        (2, 8),
        (4, 8),
    ];
    for (r, n) in uniforms {
        if n <= max_size {
            out.push(uniform(r, n).unwrap());
        }
    }
    for m in [fano(), fano_dual(), non_fano(), mk4()] {
        let m = m.unwrap();
        if m.size() <= max_size {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_has_28_bases_and_7_lines() {
        let f = fano().unwrap();
        assert_eq!(f.size(), 7);
        assert_eq!(f.rank(), 3);
        assert_eq!(f.bases().len(), 28);
        let three_circuits = f.circuits().iter().filter(|c| c.len() == 3).count();
        assert_eq!(three_circuits, 7);
    }

    #[test]
    fn fano_circuits_are_lines_and_their_complements() {
        // brute-force oracle: minimal dependent sets of F_7 are the 7 lines
        // plus the 7 complements of lines
        let f = fano().unwrap();
        let cs = f.circuits();
        assert_eq!(cs.len(), 14);
        let lines: Vec<Subset> = cs.iter().copied().filter(|c| c.len() == 3).collect();
        let quads: Vec<Subset> = cs.iter().copied().filter(|c| c.len() == 4).collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(quads.len(), 7);
        for q in &quads {
            assert!(lines.contains(&f.full_set().minus(*q)));
        }
    }

    #[test]
    fn fano_closure_of_two_points_is_a_line() {
        let f = fano().unwrap();
        let x = f.subset(["1", "2"]).unwrap();
        let cl = f.closure(x);
        assert_eq!(f.label_vec(cl), vec!["1", "2", "4"]);
    }

    #[test]
    fn fano_cyclic_flats() {
        // ∅, the 7 lines, and E
        let f = fano().unwrap();
        assert_eq!(f.cyclic_flats().len(), 9);
    }

    #[test]
    fn non_fano_has_29_bases() {
        let nf = non_fano().unwrap();
        assert_eq!(nf.bases().len(), 29);
        assert_eq!(nf.rank(), 3);
    }

    #[test]
    fn mk4_counts() {
        let m = mk4().unwrap();
        assert_eq!(m.size(), 6);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.bases().len(), 16); // spanning trees of K4
    }

    #[test]
    fn fano_dual_is_dual() {
        let f = fano().unwrap();
        assert!(fano_dual().unwrap().equals_labeled(&f.dual()));
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("uniform-2-4").unwrap().equals_labeled(&uniform(2, 4).unwrap()));
        assert!(by_name("fano_dual").is_ok());
        assert!(by_name("nope").is_err());
        assert_eq!(by_name("empty").unwrap().size(), 0);
    }
}
