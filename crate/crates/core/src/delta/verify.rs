use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::maps::tid;
use super::{falling_factorial, trace_x, DeltaMaps};
use crate::coeff::{Poly, Ring, RingElement};
use crate::error::{Error, Result};
use crate::pcat::generators::{braiding, mu};
use crate::pcat::{is_negligible, Morphism, PartitionDiagram};

/// A family of identities checked together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    XnIdempotent,
    Deltalg,
    /// One `j`, or every `j` when `None`.
    DeltaJ(Option<usize>),
    Dplus1,
    Ortho,
    Psi,
    Azero,
    Nondegenerate,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::XnIdempotent,
        Family::Deltalg,
        Family::DeltaJ(None),
        Family::Dplus1,
        Family::Ortho,
        Family::Psi,
        Family::Azero,
        Family::Nondegenerate,
    ];

    /// Largest `n` run by default.
    pub fn default_cap(self) -> usize {
        match self {
            Family::XnIdempotent => 6,
            Family::Azero | Family::Nondegenerate => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::XnIdempotent => f.write_str("xn_idempotent"),
            Family::Deltalg => f.write_str("deltalg"),
            Family::DeltaJ(None) => f.write_str("deltaj"),
            Family::DeltaJ(Some(j)) => write!(f, "deltaj:{j}"),
            Family::Dplus1 => f.write_str("dplus1"),
            Family::Ortho => f.write_str("ortho"),
            Family::Psi => f.write_str("psi"),
            Family::Azero => f.write_str("azero"),
            Family::Nondegenerate => f.write_str("nondegenerate"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "xn_idempotent" => Family::XnIdempotent,
            "deltalg" => Family::Deltalg,
            "deltaj" => Family::DeltaJ(None),
            "dplus1" => Family::Dplus1,
            "ortho" => Family::Ortho,
            "psi" => Family::Psi,
            "azero" => Family::Azero,
            "nondegenerate" => Family::Nondegenerate,
            other => match other.strip_prefix("deltaj:").map(str::parse) {
                Some(Ok(j)) => Family::DeltaJ(Some(j)),
                _ => return Err(Error::UnknownFamily(other.to_string())),
            },
        })
    }
}

/// One verified statement.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    /// Both sides of an equation, or `None` for a predicate.
    pub sides: Option<(Morphism, Morphism)>,
    pub pass: bool,
}

impl Check {
    pub fn equation(label: impl Into<String>, left: Morphism, right: Morphism) -> Result<Check> {
        let pass = left.sub(&right)?.is_zero();
        Ok(Check {
            label: label.into(),
            sides: Some((left, right)),
            pass,
        })
    }

    pub fn predicate(label: impl Into<String>, pass: bool) -> Check {
        Check {
            label: label.into(),
            sides: None,
            pass,
        }
    }

    /// `left - right`, zero exactly when an equation passes.
    pub fn difference(&self) -> Option<Morphism> {
        self.sides
            .as_ref()
            .map(|(l, r)| l.sub(r).expect("sides share a shape"))
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: String,
    pub n: usize,
    pub checks: Vec<Check>,
    pub overall: bool,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    label: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    family: &'a str,
    n: usize,
    checks: Vec<CheckJson<'a>>,
    overall: bool,
}

impl VerificationReport {
    fn new(family: String, n: usize, checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.pass);
        VerificationReport {
            family,
            n,
            checks,
            overall,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            family: &self.family,
            n: self.n,
            checks: self
                .checks
                .iter()
                .map(|c| CheckJson {
                    label: &c.label,
                    pass: c.pass,
                })
                .collect(),
            overall: self.overall,
        };
        serde_json::to_string(&doc).expect("reports serialize")
    }

    /// One line per check followed by a verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}\n", if c.pass { "pass" } else { "FAIL" }, c.label));
        }
        out.push_str(&format!(
            "{} n={}: {}\n",
            self.family,
            self.n,
            if self.overall { "all identities hold" } else { "FAILED" }
        ));
        out
    }
}

type Equation<'a> = (String, Box<dyn Fn() -> (Morphism, Morphism) + Send + Sync + 'a>);

fn chain(parts: &[&Morphism]) -> Morphism {
    Morphism::chain(parts).expect("composable by construction")
}

fn tensor(f: &Morphism, g: &Morphism) -> Morphism {
    f.tensor(g).expect("same ring")
}

fn sum(ring: &Ring, n: usize, items: &[&Morphism]) -> Morphism {
    Morphism::sum(ring, n, n, items.iter().copied()).expect("same shape")
}

/// Runs a family over `Q[t]` with its default cap.
pub fn verify_suite(family: Family, n: usize) -> Result<VerificationReport> {
    verify_suite_capped(&Ring::poly(), family, n, family.default_cap())
}

pub fn verify_suite_capped(
    ring: &Ring,
    family: Family,
    n: usize,
    cap: usize,
) -> Result<VerificationReport> {
    if n > cap {
        return Err(Error::cap("n", n, cap));
    }
    if let Family::DeltaJ(Some(j)) = family {
        if j == 0 || j > n {
            return Err(Error::InvalidInput(format!("j = {j} outside 1..={n}")));
        }
    }
    let d = DeltaMaps::new(ring, n);
    let equations = equations(&d, family);
    let checks = equations
        .par_iter()
        .map(|(label, sides)| {
            let (l, r) = sides();
            Check::equation(label.clone(), l, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(family.to_string(), n, checks))
}

fn equations<'a>(d: &'a DeltaMaps, family: Family) -> Vec<Equation<'a>> {
    let mut eqs: Vec<Equation<'a>> = Vec::new();
    let mut push = |label: String, f: Box<dyn Fn() -> (Morphism, Morphism) + Send + Sync + 'a>| {
        eqs.push((label, f));
    };
    let n = d.n();
    let r = d.ring();
    let js: Vec<usize> = match family {
        Family::DeltaJ(Some(j)) => vec![j],
        _ => (1..=n).collect(),
    };
    match family {
        Family::XnIdempotent => {
            push("idempotent".into(), Box::new(move || (d.x().compose(d.x()).unwrap(), d.x().clone())));
            push("self-dual".into(), Box::new(move || (d.x().dual(), d.x().clone())));
        }
        Family::Deltalg => {
            push(
                "D1".into(),
                Box::new(move || {
                    let mu = mu(r, n);
                    (
                        chain(&[d.x(), &mu, &tensor(d.mult(), d.x())]),
                        chain(&[d.x(), &mu, &tensor(d.x(), d.mult())]),
                    )
                }),
            );
            push(
                "D2-left".into(),
                Box::new(move || {
                    let lhs = chain(&[d.x(), &mu(r, n), &tensor(&d.unit(), d.x())]);
                    (lhs, d.x().clone())
                }),
            );
            push(
                "D2-right".into(),
                Box::new(move || {
                    let lhs = chain(&[d.x(), &mu(r, n), &tensor(d.x(), &d.unit())]);
                    (lhs, d.x().clone())
                }),
            );
            push(
                "D3".into(),
                Box::new(move || {
                    let lhs = chain(&[d.mult(), &braiding(r, n, n), &tensor(d.x(), d.x())]);
                    (lhs, d.mult().clone())
                }),
            );
        }
        Family::DeltaJ(_) => {
            for j in js {
                push(
                    format!("Dj1[j={j}]"),
                    Box::new(move || {
                        let xj = d.x_j(j);
                        let tm = d.theta_mu(j);
                        let alpha = d.alpha(j);
                        let lhs_inner = chain(&[&alpha, &mu(r, n), &tensor(d.x(), d.x())]);
                        let lhs = chain(&[xj, &tm, &tensor(&lhs_inner, xj)]);
                        let act = chain(&[xj, &tm, &tensor(&alpha, xj)]);
                        let rhs = chain(&[xj, &tm, &tensor(&alpha, &act)]);
                        (lhs, rhs)
                    }),
                );
                push(
                    format!("Dj2[j={j}]"),
                    Box::new(move || (chain(&[&d.iso_to_j(j), &d.iso_from_j(j)]), d.x_j(j).clone())),
                );
                push(
                    format!("Dj3[j={j}]"),
                    Box::new(move || (chain(&[&d.iso_from_j(j), &d.iso_to_j(j)]), d.x().clone())),
                );
            }
        }
        Family::Dplus1 => {
            push(
                "Dplus1".into(),
                Box::new(move || {
                    let mu1 = tid(&mu(r, n), 1);
                    let lhs = chain(&[d.x_next(), &mu1, &tensor(d.mult(), d.x_next())]);
                    let rhs = chain(&[d.x_next(), &mu1, &tensor(d.x(), &d.psi())]);
                    (lhs, rhs)
                }),
            );
        }
        Family::Ortho => {
            push(
                "ortho-sum".into(),
                Box::new(move || {
                    let mut parts = vec![d.x_next()];
                    parts.extend((1..=n).map(|j| d.x_j(j)));
                    (d.x_pt(), sum(r, n + 1, &parts))
                }),
            );
            for j in 1..=n {
                let zero = Morphism::zero(r, n + 1, n + 1);
                let z = zero.clone();
                push(
                    format!("ortho-j{j}-next"),
                    Box::new(move || (d.x_j(j).compose(d.x_next()).unwrap(), z.clone())),
                );
                push(
                    format!("ortho-next-j{j}"),
                    Box::new(move || (d.x_next().compose(d.x_j(j)).unwrap(), zero.clone())),
                );
                for k in 1..=n {
                    push(
                        format!("ortho-j{j}-k{k}"),
                        Box::new(move || {
                            let rhs = if j == k {
                                d.x_j(j).clone()
                            } else {
                                Morphism::zero(r, n + 1, n + 1)
                            };
                            (d.x_j(j).compose(d.x_j(k)).unwrap(), rhs)
                        }),
                    );
                }
            }
        }
        Family::Psi => psi_equations(d, &mut push),
        Family::Azero => {
            let xb11 = move || tensor(d.x(), &braiding(r, 1, 1));
            push(
                "a-assoc".into(),
                Box::new(move || {
                    let b = xb11();
                    let mu_id = tid(d.mu_delta(), 1);
                    let lhs = chain(&[d.mu_delta(), &b, &tid(d.x_next(), 1), &b, &mu_id, d.nu()]);
                    let b12 = tensor(d.x(), &braiding(r, 1, 2));
                    let rhs = chain(&[d.mu_delta(), &b, &mu_id, &b12, &tid(d.x_next(), 2), d.nu()]);
                    (lhs, rhs)
                }),
            );
            push(
                "a-unit-left".into(),
                Box::new(move || {
                    let b = xb11();
                    let u = tid(&d.unit_delta(), 1);
                    let lhs = chain(&[d.mu_delta(), &b, &tid(d.x_next(), 1), &b, &u]);
                    (lhs, d.x_next().clone())
                }),
            );
            push(
                "a-unit-right".into(),
                Box::new(move || {
                    let u = tid(&d.unit_delta(), 1);
                    let lhs = chain(&[d.mu_delta(), &xb11(), &u, d.x_next()]);
                    (lhs, d.x_next().clone())
                }),
            );
            push(
                "a-comm".into(),
                Box::new(move || (chain(&[d.mu_delta(), &xb11(), d.tau()]), d.mu_delta().clone())),
            );
        }
        Family::Nondegenerate => {
            push("b".into(), Box::new(move || (d.pairing(), d.x_next().clone())));
        }
    }
    eqs
}

fn psi_equations<'a>(
    d: &'a DeltaMaps,
    push: &mut impl FnMut(String, Box<dyn Fn() -> (Morphism, Morphism) + Send + Sync + 'a>),
) {
    let n = d.n();
    let r = d.ring();
    // Summand projections: index 0 is x_{n+1}, index j is x_{n,j}.
    let proj = move |k: usize| -> &'a Morphism {
        if k == 0 {
            d.x_next()
        } else {
            d.x_j(k)
        }
    };
    let act = move || tid(d.mult(), 1);
    push(
        "Psi[0]".into(),
        Box::new(move || {
            let inner = chain(&[d.x_next(), &d.x_pt()]);
            let lhs = chain(&[d.x_next(), &tid(&mu(r, n), 1), &tensor(d.x(), &inner)]);
            (lhs, chain(&[d.x_next(), &act()]))
        }),
    );
    push(
        "Psi-inv[0]".into(),
        Box::new(move || {
            let lhs = chain(&[&d.x_pt(), d.x_next(), &d.psi()]);
            let inner = chain(&[&d.x_pt(), d.x_next()]);
            (lhs, chain(&[&act(), &tensor(d.x(), &inner)]))
        }),
    );
    for j in 1..=n {
        push(
            format!("Psi[j={j}]"),
            Box::new(move || {
                let xj = d.x_j(j);
                let right = chain(&[xj, &d.x_pt()]);
                let lhs = chain(&[xj, &d.theta_mu(j), &tensor(&d.alpha(j), &right)]);
                (lhs, chain(&[xj, &act()]))
            }),
        );
        push(
            format!("Psi-inv[j={j}]"),
            Box::new(move || {
                let lhs = chain(&[&d.x_pt(), d.x_j(j), &d.phi(j)]);
                let inner = chain(&[&d.x_pt(), d.x_j(j)]);
                (lhs, chain(&[&act(), &tensor(d.x(), &inner)]))
            }),
        );
    }
    push(
        "Psi-inv*Psi".into(),
        Box::new(move || {
            let xp = d.x_pt();
            let parts: Vec<Morphism> = (0..=n).map(|k| chain(&[&xp, proj(k), proj(k), &xp])).collect();
            let refs: Vec<&Morphism> = parts.iter().collect();
            (sum(r, n + 1, &refs), xp)
        }),
    );
    for k in 0..=n {
        for l in 0..=n {
            push(
                format!("Psi*Psi-inv[{k},{l}]"),
                Box::new(move || {
                    let xp = d.x_pt();
                    let lhs = chain(&[proj(k), &xp, &xp, proj(l)]);
                    let rhs = if k == l {
                        proj(k).clone()
                    } else {
                        Morphism::zero(r, n + 1, n + 1)
                    };
                    (lhs, rhs)
                }),
            );
        }
    }
}

fn scalar(ring: &Ring, c: RingElement) -> Morphism {
    Morphism::from_terms(ring, 0, 0, [(PartitionDiagram::from_labels(0, 0, &[]), c)])
        .expect("scalar in ring")
}

/// Largest `d` accepted by [`deligne_split_check`].
pub const DELIGNE_CAP: usize = 3;

/// Object-level checks behind the splitting of `Δ ⊗ [pt]` at `t = d`.
pub fn deligne_split_check(d: usize) -> Result<VerificationReport> {
    if d > DELIGNE_CAP {
        return Err(Error::cap("d", d, DELIGNE_CAP));
    }
    let n = d + 1;
    let poly = Ring::poly();
    let td = BigRational::from_integer(d.into());
    let at_d = Ring::rational(td.clone());
    let mut checks = verify_suite_capped(&poly, Family::Ortho, n, n)?
        .checks
        .into_iter()
        .filter(|c| c.label == "ortho-sum")
        .collect::<Vec<_>>();

    let dim = trace_x(&poly, n)?;
    let dim_at_d = at_d.rat(dim.eval_at(&td)?);
    checks.push(Check::equation(
        "dim-vanishes",
        scalar(&at_d, dim_at_d),
        scalar(&at_d, at_d.zero()),
    )?);

    checks.push(Check::equation(
        "trace-is-falling-factorial",
        scalar(&poly, trace_x(&poly, n + 1)?),
        scalar(&poly, RingElement::Poly(falling_factorial(n + 1))),
    )?);

    // Closing the new strand of x_{n+1} leaves (t - n) x_n.
    let closed = super::x_n(&poly, n + 1).partial_trace()?;
    let t_minus_n = Poly::from_ints(&[-(n as i64), 1]);
    checks.push(Check::equation(
        "relative-dim",
        closed.clone(),
        super::x_n(&poly, n).scale(&RingElement::Poly(t_minus_n))?,
    )?);
    checks.push(Check::equation(
        "relative-dim-at-d",
        closed.specialize(&td)?,
        super::x_n(&at_d, n).scale(&at_d.int(-1))?,
    )?);

    let x = super::x_n(&at_d, n);
    checks.push(Check::predicate("x-nonzero", !x.is_zero()));
    checks.push(Check::predicate("x-negligible", is_negligible(&x)?));
    Ok(VerificationReport::new("deligne_split".into(), d, checks))
}
