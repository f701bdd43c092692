use fracopt::fem::{
    assemble_mass, assemble_stiffness, check_integrability, normalization_constant, smallest_eigenvalue, FracOrder,
    Mesh1D,
};
use fracopt::verify::oracle;
use fracopt::Error;

fn order(s: f64) -> FracOrder {
    FracOrder::new(s).unwrap()
}

#[test]
fn assembly_matches_quadrature_for_small_meshes() {
    for s in [0.25, 0.5, 0.75] {
        for n in 1..=7 {
            let mesh = Mesh1D::new(-0.5, 0.5, n).unwrap();
            let a = assemble_stiffness(&mesh, order(s)).unwrap();
            let q = oracle::stiffness_matrix(&mesh, order(s)).unwrap();
            for (i, row) in q.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let rel = (v - a.get(i, j)).abs() / a.get(i, j).abs();
                    assert!(rel < 1e-8, "s={s} n={n} ({i},{j}): {} vs {v}", a.get(i, j));
                }
            }
        }
    }
}

#[test]
fn assembly_on_shifted_domain_matches_quadrature() {
    let mesh = Mesh1D::new(0.3, 2.1, 5).unwrap();
    let a = assemble_stiffness(&mesh, order(0.35)).unwrap();
    for j in 0..5 {
        let q = oracle::stiffness_entry(&mesh, order(0.35), 1, j).unwrap();
        assert!((q - a.get(1, j)).abs() < 1e-9 * a.get(1, 1));
    }
}

#[test]
fn dilation_scales_stiffness() {
    // A on L·Ω equals L^{1-2s} A on Ω; M scales with L
    for s in [0.2, 0.5, 0.9] {
        let a1 = assemble_stiffness(&Mesh1D::new(-0.5, 0.5, 9).unwrap(), order(s)).unwrap();
        let a3 = assemble_stiffness(&Mesh1D::new(-1.5, 1.5, 9).unwrap(), order(s)).unwrap();
        let factor = 3f64.powf(1.0 - 2.0 * s);
        for j in 0..9 {
            assert!((a3.get(0, j) - factor * a1.get(0, j)).abs() < 1e-12 * a3.get(0, 0));
        }
    }
}

#[test]
fn half_order_eigenvalue_on_symmetric_interval() {
    // reference value for s = 1/2 on (-1, 1)
    let reference = 1.157_773_883_697_7;
    let mut previous = f64::INFINITY;
    for n in [31, 63, 127, 255] {
        let mesh = Mesh1D::new(-1.0, 1.0, n).unwrap();
        let lambda = smallest_eigenvalue(&assemble_stiffness(&mesh, order(0.5)).unwrap(), &assemble_mass(&mesh))
            .unwrap()
            .value;
        assert!(lambda > reference && lambda < previous, "n={n}: {lambda}");
        previous = lambda;
    }
    assert!((previous - reference) / reference < 5e-3);
}

#[test]
fn eigenvalue_refinement_within_five_percent() {
    for s in [0.3, 0.8] {
        let lam = |n| {
            let mesh = Mesh1D::new(-0.5, 0.5, n).unwrap();
            smallest_eigenvalue(&assemble_stiffness(&mesh, order(s)).unwrap(), &assemble_mass(&mesh))
                .unwrap()
                .value
        };
        let (coarse, fine) = (lam(31), lam(255));
        assert!((coarse - fine).abs() / fine < 0.05, "s={s}: {coarse} vs {fine}");
    }
}

#[test]
fn eigenvalue_decreases_with_domain() {
    let lam = |half: f64| {
        let mesh = Mesh1D::new(-half, half, 63).unwrap();
        smallest_eigenvalue(&assemble_stiffness(&mesh, order(0.6)).unwrap(), &assemble_mass(&mesh))
            .unwrap()
            .value
    };
    let values: Vec<f64> = [0.25, 0.5, 1.0, 2.0].iter().map(|h| lam(*h)).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    // same mesh shape, so the ratio is exactly the dilation factor 2^{2s}
    assert!((values[0] / values[1] - 2f64.powf(1.2)).abs() < 1e-9);
}

#[test]
fn eigenvector_is_positive_and_mass_normalized() {
    let mesh = Mesh1D::new(-0.5, 0.5, 41).unwrap();
    let m = assemble_mass(&mesh);
    let pair = smallest_eigenvalue(&assemble_stiffness(&mesh, order(0.4)).unwrap(), &m).unwrap();
    assert!(pair.vector.iter().all(|v| *v > 0.0));
    assert!((m.inner(&pair.vector, &pair.vector) - 1.0).abs() < 1e-10);
}

#[test]
fn normalization_constant_values() {
    assert!((normalization_constant(1, order(0.5)).unwrap().value - 1.0 / std::f64::consts::PI).abs() < 1e-15);
    assert!((normalization_constant(1, order(0.8)).unwrap().value - 0.267_479_690_930_975_04).abs() < 1e-15);
    // the two-dimensional half-order constant is 1/(2π)
    let c2 = normalization_constant(2, order(0.5)).unwrap().value;
    assert!((c2 - 0.5 / std::f64::consts::PI).abs() < 1e-15);
    assert!(matches!(normalization_constant(0, order(0.5)), Err(Error::Domain(_))));
}

#[test]
fn integrability_condition() {
    let s = order(0.8);
    assert!(check_integrability(1, 2.0, 2.0, s).unwrap());
    assert!(!check_integrability(1, 1.0, 1.0, s).unwrap());
    assert!(check_integrability(1, 2.0, 2.0, order(0.2)).is_ok());
}

#[test]
fn invalid_inputs() {
    assert!(FracOrder::new(0.0).is_err());
    assert!(FracOrder::new(1.0).is_err());
    assert!(FracOrder::new(f64::NAN).is_err());
    assert!(Mesh1D::new(1.0, 0.0, 3).is_err());
    assert!(Mesh1D::new(0.0, 1.0, 0).is_err());
}
