//! Concrete Jordan algebras: the Hermitian matrix families over ℝ, ℂ, ℍ, the
//! 27-dimensional Albert algebra, spin factors and finite direct sums.

mod algebra;
mod element;
mod matrix;
pub mod realize;

pub use algebra::Algebra;
pub use element::{jordan_product, jpower, quadratic_rep, trace_form, unit, JordanElement};
pub use matrix::SquareMatrix;

/// Pauli matrices as elements of `HermC(2)`.
pub mod pauli {
    use super::{Algebra, JordanElement};

    pub fn sigma_x() -> JordanElement {
        JordanElement::from_raw(Algebra::herm_c(2), vec![0.0, 0.0, 1.0, 0.0])
    }

    pub fn sigma_y() -> JordanElement {
        JordanElement::from_raw(Algebra::herm_c(2), vec![0.0, 0.0, 0.0, -1.0])
    }

    pub fn sigma_z() -> JordanElement {
        JordanElement::from_raw(Algebra::herm_c(2), vec![1.0, -1.0, 0.0, 0.0])
    }

    /// `diag(a, b)`.
    pub fn diag(a: f64, b: f64) -> JordanElement {
        JordanElement::from_raw(Algebra::herm_c(2), vec![a, b, 0.0, 0.0])
    }
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::realize::*;
    use super::*;
    use crate::error::Error;
    use crate::random::{random_element, trial_rng};
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_matrices() -> [DMatrix<Complex64>; 3] {
        let z = c(0.0, 0.0);
        [
            DMatrix::from_row_slice(2, 2, &[z, c(1.0, 0.0), c(1.0, 0.0), z]),
            DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), z, z, c(-1.0, 0.0)]),
        ]
    }

    fn families() -> Vec<Algebra> {
        vec![
            Algebra::herm_r(3),
            Algebra::herm_c(3),
            Algebra::herm_h(2),
            Algebra::Albert,
            Algebra::spin(4),
            Algebra::direct_sum(vec![Algebra::herm_c(2), Algebra::spin(2)]),
        ]
    }

    #[test]
    fn pauli_coordinates_match_matrices() {
        let [sx, sy, sz] = pauli_matrices();
        assert_eq!(to_complex_matrix(&sigma_x()).unwrap(), sx);
        assert_eq!(to_complex_matrix(&sigma_y()).unwrap(), sy);
        assert_eq!(to_complex_matrix(&sigma_z()).unwrap(), sz);
    }

    #[test]
    fn spin_product_example() {
        let alg = Algebra::spin(2);
        let a = JordanElement::new(alg.clone(), vec![1.0, 0.0, 0.0]).unwrap();
        let b = JordanElement::new(alg.clone(), vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(jordan_product(&a, &b).unwrap().coords(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn spin_square_closed_form() {
        let a = JordanElement::new(Algebra::spin(3), vec![0.5, -1.0, 2.0, 0.25]).unwrap();
        let (x, t) = ([0.5, -1.0, 2.0], 0.25);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let expected = [2.0 * t * x[0], 2.0 * t * x[1], 2.0 * t * x[2], xx + t * t];
        assert_eq!(jpower(&a, 2).coords(), &expected);
    }

    #[test]
    fn unit_law_on_every_family() {
        for alg in families() {
            let one = unit(&alg);
            let a = random_element(&alg, &mut trial_rng(5, 0));
            let r = &jordan_product(&one, &a).unwrap() - &a;
            assert!(r.max_abs() < 1e-12, "{alg}");
            assert_eq!(jpower(&a, 0), one);
            assert_eq!(jpower(&a, 1), a);
        }
        assert_eq!(unit(&Algebra::herm_r(2)).coords(), &[1.0, 1.0, 0.0]);
        assert_eq!(unit(&Algebra::spin(3)).coords(), &[0.0, 0.0, 0.0, 1.0]);
        let sum = Algebra::direct_sum(vec![Algebra::herm_r(2), Algebra::spin(1)]);
        assert_eq!(unit(&sum).coords(), &[1.0, 1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn pauli_products_against_matrix_oracle() {
        let [sx, _, sz] = pauli_matrices();
        let oracle = (&sx * &sz + &sz * &sx) * c(0.5, 0.0);
        assert!(oracle.iter().all(|v| v.norm() == 0.0));
        assert_eq!(sigma_x().circ(&sigma_z()).max_abs(), 0.0);

        let sq = &sx * &sx;
        assert_eq!(
            from_complex_matrix(&Algebra::herm_c(2), &sq).unwrap(),
            unit(&Algebra::herm_c(2))
        );
        assert_eq!(jpower(&sigma_x(), 2), unit(&Algebra::herm_c(2)));

        let zxz = &sz * &sx * &sz;
        let u = quadratic_rep(&sigma_z(), &sigma_x()).unwrap();
        assert_eq!(u, from_complex_matrix(&Algebra::herm_c(2), &zxz).unwrap());
        assert_eq!(u, -sigma_x());

        assert_eq!(
            trace_form(&sigma_x(), &sigma_x()).unwrap(),
            (&sx * &sx).trace().re
        );
        assert_eq!(trace_form(&sigma_x(), &sigma_x()).unwrap(), 2.0);
    }

    #[test]
    fn quadratic_rep_collapses() {
        for alg in families() {
            let mut rng = trial_rng(11, 0);
            let a = random_element(&alg, &mut rng);
            let b = random_element(&alg, &mut rng);
            let one = unit(&alg);
            assert!((&quadratic_rep(&one, &b).unwrap() - &b).max_abs() < 1e-12);
            assert!((&quadratic_rep(&a, &one).unwrap() - &a.square()).max_abs() < 1e-12);
        }
    }

    #[test]
    fn trace_form_examples() {
        for n in 1..5 {
            let one = unit(&Algebra::herm_c(n));
            assert_eq!(trace_form(&one, &one).unwrap(), n as f64);
        }
        for alg in families() {
            let mut rng = trial_rng(3, 1);
            let a = random_element(&alg, &mut rng);
            let b = random_element(&alg, &mut rng);
            assert!((a.trace_form(&b) - b.trace_form(&a)).abs() < 1e-12);
            assert!(a.trace_form(&a) > 0.0);
        }
    }

    #[test]
    fn trace_form_is_real_trace_of_ambient_product() {
        let alg = Algebra::herm_c(3);
        let mut rng = trial_rng(8, 0);
        let a = random_element(&alg, &mut rng);
        let b = random_element(&alg, &mut rng);
        let (ma, mb) = (
            to_complex_matrix(&a).unwrap(),
            to_complex_matrix(&b).unwrap(),
        );
        assert!((a.trace_form(&b) - (ma * mb).trace().re).abs() < 1e-12);

        let h = Algebra::herm_h(2);
        let a = random_element(&h, &mut rng);
        let b = random_element(&h, &mut rng);
        let (qa, qb) = (
            to_quaternion_matrix(&a).unwrap(),
            to_quaternion_matrix(&b).unwrap(),
        );
        assert!((a.trace_form(&b) - qa.matmul(&qb).trace_re()).abs() < 1e-12);

        let a = random_element(&Algebra::Albert, &mut rng);
        let b = random_element(&Algebra::Albert, &mut rng);
        let (oa, ob) = (
            to_octonion_matrix(&a).unwrap(),
            to_octonion_matrix(&b).unwrap(),
        );
        assert!((a.trace_form(&b) - oa.matmul(&ob).trace_re()).abs() < 1e-12);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = unit(&Algebra::herm_c(2));
        let b = unit(&Algebra::herm_r(2));
        assert!(matches!(
            jordan_product(&a, &b),
            Err(Error::IncompatibleAlgebras { .. })
        ));
        assert!(matches!(
            quadratic_rep(&a, &b),
            Err(Error::IncompatibleAlgebras { .. })
        ));
        assert!(matches!(
            trace_form(&a, &b),
            Err(Error::IncompatibleAlgebras { .. })
        ));
    }

    #[test]
    fn construction_validates_coordinates() {
        assert!(matches!(
            JordanElement::new(Algebra::herm_c(2), vec![1.0; 3]),
            Err(Error::CoordinateLength {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            JordanElement::new(Algebra::spin(1), vec![1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        ));
        assert!(JordanElement::new(Algebra::herm_c(0), vec![]).is_err());
    }

    #[test]
    fn element_json_shape() {
        let e = sigma_x();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"family": "hermC", "params": {"n": 2}, "coords": [0.0, 0.0, 1.0, 0.0]})
        );
        let back: JordanElement = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
        let albert = serde_json::json!({"family": "albert", "coords": vec![0.0; 27]});
        assert!(serde_json::from_value::<JordanElement>(albert).is_ok());
        let short = serde_json::json!({"family": "hermC", "params": {"n": 2}, "coords": [1.0]});
        assert!(serde_json::from_value::<JordanElement>(short).is_err());
    }

    #[test]
    fn multiplication_operator_matches_product() {
        for alg in families() {
            let mut rng = trial_rng(2, 2);
            let a = random_element(&alg, &mut rng);
            let b = random_element(&alg, &mut rng);
            let via_matrix =
                JordanElement::from_vector(&alg, &(a.multiplication_operator() * b.to_vector()));
            assert!((&via_matrix - &a.circ(&b)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let sum = Algebra::direct_sum(vec![Algebra::herm_c(2), Algebra::spin(2)]);
        let mut rng = trial_rng(4, 4);
        let a = random_element(&sum, &mut rng);
        let b = random_element(&sum, &mut rng);
        let ab = a.circ(&b);
        for i in 0..2 {
            let expected = a.component(i).unwrap().circ(&b.component(i).unwrap());
            assert_eq!(ab.component(i).unwrap(), expected);
        }
        let e = sigma_x().embed(&sum, 0).unwrap();
        assert_eq!(e.component(0).unwrap(), sigma_x());
        assert!(sigma_x().embed(&sum, 1).is_err());
    }
}
