//! Exact combinatorics and analysis for annular non-crossing permutation
//! families, Marchenko-Pastur moment polynomials and their 1/N corrections,
//! with a seeded Wishart Monte Carlo harness.
//!
//! Module map:
//! - [`perm`], [`partition`]: permutations of [±n], set partitions, joins,
//!   kernels, genus.
//! - [`enumerate`]: the combinatorial families (pairings, non-crossing
//!   partitions, the δ-symmetric annular families) and the tripartite
//!   decomposition with its bijections.
//! - [`bijections`]: pairing ↔ permutation structure maps on the disc and
//!   the annulus, plus kernel compatibility for words.
//! - [`poly`], [`series`], [`dual`]: exact polynomial, truncated power
//!   series, and dual-number arithmetic.
//! - [`moments`]: exact moment polynomials, the finite-N trace expansion and
//!   its 1/N terms, multi-matrix words.
//! - [`analytic`]: generating functions, Cauchy transforms, densities,
//!   infinitesimal cumulants, rescaling checks.
//! - [`montecarlo`]: seeded Wishart sampling and exact-vs-sampled checks.
//! - [`cli`]: the `inf-wishart` command line.

pub mod perm;
pub mod partition;
pub mod enumerate;
pub mod bijections;
pub mod poly;
