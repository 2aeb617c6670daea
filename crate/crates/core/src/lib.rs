//! Exact computations in exterior algebras and their graded quotients:
//! Gröbner bases, Hilbert series, Betti tables, edge ideals of graphs,
//! regular elements and depth, and ranks of quadrics.

pub mod change;
pub mod combin;
pub mod element;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod graph;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod quadrics;
pub mod quotient;
pub mod regular;
pub mod resolution;
pub mod scan;

pub use change::LinearChange;
pub use element::{ExtElement, LinearForm};
pub use error::{Error, Result};
pub use field::{rational, Field, Fp, Fp32003, Q};
pub use groebner::{buchberger, initial_ideal, is_quadratic_gb, normal_form, GroebnerBasis};
pub use hilbert::{ambient_hilbert, froberg_inverse, hilbert_series, HilbertSeries, PowerSeries};
pub use ideal::{Ideal, MonomialIdeal};
pub use monomial::Monomial;
pub use order::{stock_orders, MonomialOrder, OrderKind};
pub use enumerate::{canonical_form, enumerate_graphs, search_by_series};
pub use graph::Graph;
pub use scan::{fixed_coordinate_quadratic_scan, ScanOutcome};
pub use quotient::QuotientAlgebra;
pub use regular::{depth_probe, is_regular, is_regular_sequence, quotient_by_linear, RegularityCertificate, Verdict};
pub use resolution::{betti_over_e, euler_identity_check, koszul_betti, koszul_betti_bounded, BettiTable};
pub use quadrics::{decompose, generic_quadrics, min_rank_sample, rank2_in_pencil, rank_bound, AlternatingMatrix};
