//! Coordinates on subquotients `top / bottom` of a vector space.
//!
//! A subquotient is represented by a fixed complement of `bottom` inside
//! `top`; coordinates of a vector of `top` are its coefficients on that
//! complement once the `bottom` component is discarded.

use super::field::Field;
use super::mat::Mat;
use super::subspace::Subspace;

/// The subquotient `top / bottom` with an echelon complement as basis.
#[derive(Clone)]
pub struct Subquotient<F> {
    top: Subspace<F>,
    bottom: Subspace<F>,
    complement: Vec<Vec<F>>,
    solver: Option<Mat<F>>,
}

impl<F: Field> std::fmt::Debug for Subquotient<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subquotient").field("top", &self.top).field("bottom", &self.bottom).finish()
    }
}

impl<F: Field> Subquotient<F> {
    /// Builds the subquotient; `bottom` must lie inside `top`.
    pub fn new(top: &Subspace<F>, bottom: &Subspace<F>) -> Self {
        Self::with_complement(top, bottom, bottom.complement_in(top))
    }

    /// Builds the subquotient using the given complement of `bottom` in `top`.
    pub fn with_complement(top: &Subspace<F>, bottom: &Subspace<F>, complement: Vec<Vec<F>>) -> Self {
        debug_assert!(top.contains_subspace(bottom), "bottom must lie inside top");
        let mut cols = complement.clone();
        cols.extend(bottom.basis().iter().cloned());
        let solver = if cols.is_empty() { None } else { Some(Mat::from_columns(top.ambient(), &cols)) };
        Subquotient { top: top.clone(), bottom: bottom.clone(), complement, solver }
    }

    /// Dimension of the subquotient.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn top(&self) -> &Subspace<F> {
        &self.top
    }

    pub fn bottom(&self) -> &Subspace<F> {
        &self.bottom
    }

    /// The complement vectors, i.e. lifts of the coordinate basis.
    pub fn complement(&self) -> &[Vec<F>] {
        &self.complement
    }

    /// Coordinates of a vector of `top`, or `None` if it is not in `top`.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        match &self.solver {
            None => v.iter().all(|x| x.is_zero()).then(Vec::new),
            Some(m) => {
                let x = m.solve(v)?;
                Some(x[..self.dim()].to_vec())
            }
        }
    }

    /// The lift `Σ c_i complement_i` of a coordinate vector.
    pub fn lift(&self, c: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.top.ambient()];
        for (a, v) in c.iter().zip(&self.complement) {
            if a.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.add(&a.mul(x));
            }
        }
        out
    }

    /// The image of a subspace of the ambient space meeting `top`: the
    /// coordinates of `(s ∩ top) + bottom`.
    pub fn image_of(&self, s: &Subspace<F>) -> Subspace<F> {
        let meet = s.intersect(&self.top);
        let vs: Vec<Vec<F>> = meet.basis().iter().filter_map(|v| self.coords(v)).collect();
        Subspace::span(self.dim(), &vs)
    }

    /// The subspace of the ambient space corresponding to coordinates in `s`
    /// (its lift plus `bottom`).
    pub fn preimage_of(&self, s: &Subspace<F>) -> Subspace<F> {
        let mut vs: Vec<Vec<F>> = s.basis().iter().map(|c| self.lift(c)).collect();
        vs.extend(self.bottom.basis().iter().cloned());
        Subspace::span(self.top.ambient(), &vs)
    }

    /// Matrix of the map induced on `self → target` by an ambient map `m`,
    /// which must send `top` into `target.top` and `bottom` into
    /// `target.bottom`.
    pub fn induced(&self, m: &Mat<F>, target: &Subquotient<F>) -> Mat<F> {
        let cols: Vec<Vec<F>> = self
            .complement
            .iter()
            .map(|v| target.coords(&m.mul_vec(v)).expect("map must respect the subquotients"))
            .collect();
        Mat::from_columns(target.dim(), &cols)
    }

    /// Matrix of the induced endomorphism.
    pub fn induced_endo(&self, m: &Mat<F>) -> Mat<F> {
        self.induced(m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::Rational;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| Rational::from_int(a)).collect()
    }

    #[test]
    fn coordinates_ignore_the_bottom() {
        let top = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let bottom = Subspace::span(3, &[v(&[1, 0, 0])]);
        let q = Subquotient::new(&top, &bottom);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coords(&v(&[5, 2, 0])), Some(v(&[2])));
        assert_eq!(q.coords(&v(&[0, 0, 1])), None);
    }

    #[test]
    fn induced_map_on_a_quotient() {
        // N e2 = e1, N e3 = e2; the quotient V / span(e1) carries N e3 = e2.
        let n = Mat::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let top = Subspace::<Rational>::full(3);
        let bottom = Subspace::span(3, &[v(&[1, 0, 0])]);
        let q = Subquotient::new(&top, &bottom);
        let m = q.induced_endo(&n);
        assert_eq!(m, Mat::from_i64_rows(&[&[0, 1], &[0, 0]]));
    }
}
