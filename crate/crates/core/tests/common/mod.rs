#![allow(dead_code)]

use extkoszul::*;

/// `Σ c · e_{v_1} ⋯ e_{v_k}` with integer coefficients.
pub fn poly(n: usize, terms: &[(i64, &[usize])]) -> ExtElement {
    let mut f = ExtElement::zero(n);
    for (c, vars) in terms {
        let mut t = ExtElement::one(n);
        for &v in *vars {
            t = &t * &ExtElement::var(n, v);
        }
        f.add_scaled(&rational(*c, 1), &t);
    }
    f
}

pub fn ideal(n: usize, gens: &[&[(i64, &[usize])]]) -> Ideal {
    Ideal::new(n, gens.iter().map(|g| poly(n, g)).collect()).unwrap()
}

/// `(e1e2 - e3e4, e1e3 - e2e4)`.
pub fn thieu() -> Ideal {
    ideal(4, &[&[(1, &[1, 2]), (-1, &[3, 4])], &[(1, &[1, 3]), (-1, &[2, 4])]])
}

pub fn principal_quadric() -> Ideal {
    ideal(4, &[&[(1, &[1, 2]), (1, &[3, 4])]])
}

/// Six rank-4 quadrics in 8 variables with initial ideal the edge ideal of
/// two disjoint triangles.
pub fn two_triangle_quadrics() -> Ideal {
    ideal(
        8,
        &[
            &[(1, &[1, 2]), (1, &[3, 4])],
            &[(1, &[1, 3]), (1, &[2, 4])],
            &[(1, &[2, 3]), (1, &[1, 4])],
            &[(1, &[5, 6]), (1, &[7, 8])],
            &[(1, &[5, 7]), (1, &[6, 8])],
            &[(1, &[6, 7]), (1, &[5, 8])],
        ],
    )
}

/// Variables `c, u, v, w, x, y, z` are `e1, …, e7`.
pub fn cubic_check_ideal() -> Ideal {
    let (c, u, v, w, x, y, z) = (1, 2, 3, 4, 5, 6, 7);
    ideal(
        7,
        &[
            &[(1, &[u, v])],
            &[(1, &[u, w])],
            &[(1, &[v, w])],
            &[(1, &[x, y])],
            &[(1, &[x, z])],
            &[(1, &[y, z])],
            &[(1, &[u, x, y, c])],
            &[(1, &[v, x, y, c])],
        ],
    )
}

/// `(e1e2, e2e3, e3e4, e4e5, e5e6, e6(e1+e4))`.
pub fn six_variable_lg_ideal() -> Ideal {
    ideal(
        6,
        &[
            &[(1, &[1, 2])],
            &[(1, &[2, 3])],
            &[(1, &[3, 4])],
            &[(1, &[4, 5])],
            &[(1, &[5, 6])],
            &[(1, &[6, 1]), (1, &[6, 4])],
        ],
    )
}

/// Are the two ideals equal? Compared through reduced Gröbner bases.
pub fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    let o = MonomialOrder::degrevlex(a.ambient());
    buchberger(a, &o).elements() == buchberger(b, &o).elements()
}
