use super::{resultant, resultant_over_poly_ring, AlgebraError, Monomial, MultiPoly, UniPoly};

/// Hypothesis (H): `f` is monic in `y` with `deg_y f = deg f`, and
/// `Res(f(0, y), ∂f/∂y(0, y)) ≠ 0`.
///
/// `y_var` indexes `y`. When `transcendental` is given, that variable is
/// treated as a coefficient `t` (so `f ∈ F[t][x, y]`), degrees ignore it and
/// the resultant is computed over `F[t]`. Constant inputs return `false`.
pub fn check_hypothesis_h(
    f: &MultiPoly,
    y_var: usize,
    transcendental: Option<usize>,
) -> Result<bool, AlgebraError> {
    let nv = f.nvars();
    if y_var >= nv || transcendental.is_some_and(|t| t >= nv || t == y_var) {
        return Err(AlgebraError::ArityMismatch {
            expected: nv,
            got: y_var.max(transcendental.unwrap_or(0)) + 1,
        });
    }
    let is_t = |i: usize| Some(i) == transcendental;
    let Some(deg) = f.degree_over(|i| !is_t(i)) else {
        return Ok(false);
    };
    let deg_y = f.degree_in(y_var).unwrap_or(0);
    if deg == 0 || deg_y != deg {
        return Ok(false);
    }
    // leading coefficient in y must be exactly 1
    let mut lead = Monomial::one(nv);
    lead.0[y_var] = deg_y;
    let leading = f.coeffs_in(y_var).pop().expect("nonzero");
    if leading != MultiPoly::one(f.field(), nv) {
        return Ok(false);
    }
    debug_assert!(f.field().is_one(&f.coeff(&lead)));

    // f(0, y): set every variable other than y and t to zero
    let field = f.field();
    let mut f0 = f.clone();
    for i in 0..nv {
        if i != y_var && !is_t(i) {
            f0 = f0.specialize(i, &field.zero());
        }
    }
    let df0 = f0.derivative(y_var);
    if df0.is_zero() {
        return Ok(false);
    }
    match transcendental {
        None => {
            let to_uni = |p: &MultiPoly| {
                UniPoly::new(
                    field,
                    p.coeffs_in(y_var).iter().map(|c| c.constant_term()).collect(),
                )
            };
            Ok(!resultant(&to_uni(&f0), &to_uni(&df0))?.is_zero())
        }
        Some(t) => {
            let to_ring = |p: &MultiPoly| -> Vec<UniPoly> {
                p.coeffs_in(y_var)
                    .iter()
                    .map(|c| {
                        UniPoly::new(
                            field,
                            c.coeffs_in(t).iter().map(|ct| ct.constant_term()).collect(),
                        )
                    })
                    .collect()
            };
            Ok(!resultant_over_poly_ring(field, &to_ring(&f0), &to_ring(&df0))?.is_zero())
        }
    }
}
