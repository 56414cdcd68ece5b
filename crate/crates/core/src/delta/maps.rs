use std::sync::OnceLock;

use super::{theta, theta_legs, x_n, ThetaVariant};
use crate::coeff::Ring;
use crate::pcat::generators::{braiding, coev, ev, identity, mu, unit};
use crate::pcat::Morphism;

/// The named structure maps attached to `Δ_n` and `Δ_{n+1}`.
///
/// Objects are tensor powers of `[pt]`; `Δ_n ⊗ [pt]` is `[A_{n+1}]` with the
/// extra point last. Expensive composites are built on first use.
pub struct DeltaMaps {
    ring: Ring,
    n: usize,
    x: Morphism,
    x_next: Morphism,
    x_j: Vec<Morphism>,
    mult: OnceLock<Morphism>,
    tau: OnceLock<Morphism>,
    nu: OnceLock<Morphism>,
    mu_delta: OnceLock<Morphism>,
}

/// `f ⊗ id_k`.
pub(crate) fn tid(f: &Morphism, k: usize) -> Morphism {
    f.tensor(&identity(f.ring(), k)).expect("same ring")
}

/// `x ⊗ g` with a structural morphism on the trailing points.
fn xt(x: &Morphism, g: &Morphism) -> Morphism {
    x.tensor(g).expect("same ring")
}

fn chain(parts: &[&Morphism]) -> Morphism {
    Morphism::chain(parts).expect("composable by construction")
}

impl DeltaMaps {
    pub fn new(ring: &Ring, n: usize) -> Self {
        let x = x_n(ring, n);
        let x_j = (1..=n)
            .map(|j| theta(&x, j, ThetaVariant::Endo).expect("j in range"))
            .collect();
        DeltaMaps {
            ring: ring.clone(),
            n,
            x_next: x_n(ring, n + 1),
            x,
            x_j,
            mult: OnceLock::new(),
            tau: OnceLock::new(),
            nu: OnceLock::new(),
            mu_delta: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x_n`.
    pub fn x(&self) -> &Morphism {
        &self.x
    }

    /// `x_{n+1}`.
    pub fn x_next(&self) -> &Morphism {
        &self.x_next
    }

    /// `x_{n,j}` for `1 <= j <= n`.
    pub fn x_j(&self, j: usize) -> &Morphism {
        &self.x_j[j - 1]
    }

    /// `x_n ⊗ id_[pt]`.
    pub fn x_pt(&self) -> Morphism {
        tid(&self.x, 1)
    }

    /// `x_n mu_n (x_n ⊗ x_n)`.
    pub fn mult(&self) -> &Morphism {
        self.mult.get_or_init(|| {
            let xx = self.x.tensor(&self.x).expect("same ring");
            chain(&[&self.x, &mu(&self.ring, self.n), &xx])
        })
    }

    /// `x_n 1_n`.
    pub fn unit(&self) -> Morphism {
        chain(&[&self.x, &unit(&self.ring, self.n)])
    }

    /// `Θ_j(mu_n)`.
    pub fn theta_mu(&self, j: usize) -> Morphism {
        theta_legs(&mu(&self.ring, self.n), self.n, j).expect("j in range")
    }

    /// `x_{n,j} Θ^{A_n}_j(x_n) x_n : Δ_n -> Δ_n(j)`.
    pub fn alpha(&self, j: usize) -> Morphism {
        let up = theta(&self.x, j, ThetaVariant::Target).expect("j in range");
        chain(&[self.x_j(j), &up, &self.x])
    }

    /// `x_{n,j} Θ_j(mu_n) (x_{n,j} ⊗ x_{n,j})`.
    pub fn beta(&self, j: usize) -> Morphism {
        let xj = self.x_j(j);
        chain(&[xj, &self.theta_mu(j), &xj.tensor(xj).expect("same ring")])
    }

    /// `beta (alpha ⊗ x_{n,j}) : Δ_n ⊗ Δ_n(j) -> Δ_n(j)`.
    pub fn phi(&self, j: usize) -> Morphism {
        let inner = self.alpha(j).tensor(self.x_j(j)).expect("same ring");
        chain(&[&self.beta(j), &inner])
    }

    /// `x_{n,j} Θ^{A_n}_j(id) x_n`, the module isomorphism `Δ_n -> Δ_n(j)`.
    pub fn iso_to_j(&self, j: usize) -> Morphism {
        let up = theta(&identity(&self.ring, self.n), j, ThetaVariant::Target).expect("j in range");
        chain(&[self.x_j(j), &up, &self.x])
    }

    /// `x_n Θ^j_{A_n}(id) x_{n,j}`, its inverse.
    pub fn iso_from_j(&self, j: usize) -> Morphism {
        let down = theta(&identity(&self.ring, self.n), j, ThetaVariant::Source).expect("j in range");
        chain(&[&self.x, &down, self.x_j(j)])
    }

    /// `x_{n+1} (mu_n ⊗ id) (x_n ⊗ x_{n+1}) : Δ_n ⊗ Δ_{n+1} -> Δ_{n+1}`.
    pub fn psi(&self) -> Morphism {
        let inner = self.x.tensor(&self.x_next).expect("same ring");
        chain(&[&self.x_next, &tid(&mu(&self.ring, self.n), 1), &inner])
    }

    fn x_beta11(&self) -> Morphism {
        xt(&self.x, &braiding(&self.ring, 1, 1))
    }

    /// The identity of `Δ_{n+1} ⊗_{Δ_n} Δ_{n+1}` realised on `[A_{n+2}]`.
    pub fn tau(&self) -> &Morphism {
        self.tau.get_or_init(|| {
            let b = self.x_beta11();
            let xi = tid(&self.x_next, 1);
            chain(&[&b, &xi, &b, &xi])
        })
    }

    /// The identity of the triple relative tensor power, on `[A_{n+3}]`.
    pub fn nu(&self) -> &Morphism {
        self.nu.get_or_init(|| {
            let r = &self.ring;
            chain(&[
                &xt(&self.x, &braiding(r, 1, 2)),
                &tid(&self.x_next, 2),
                &xt(&self.x, &braiding(r, 2, 1)),
                &tid(self.tau(), 1),
            ])
        })
    }

    /// `x_{n+1} (x_n ⊗ 1_1)`.
    pub fn unit_delta(&self) -> Morphism {
        chain(&[&self.x_next, &xt(&self.x, &unit(&self.ring, 1))])
    }

    /// `x_{n+1} (x_n ⊗ mu_1) tau`.
    pub fn mu_delta(&self) -> &Morphism {
        self.mu_delta.get_or_init(|| {
            chain(&[&self.x_next, &xt(&self.x, &mu(&self.ring, 1)), self.tau()])
        })
    }

    /// `tau (x_n ⊗ beta_{1,1}) tau`.
    pub fn braid_delta(&self) -> Morphism {
        chain(&[self.tau(), &self.x_beta11(), self.tau()])
    }

    /// `x_n (x_n ⊗ ev_[pt]) tau`.
    pub fn ev_delta(&self) -> Morphism {
        chain(&[&self.x, &xt(&self.x, &ev(&self.ring, 1)), self.tau()])
    }

    /// `tau (x_n ⊗ coev_[pt]) x_n`.
    pub fn coev_delta(&self) -> Morphism {
        chain(&[self.tau(), &xt(&self.x, &coev(&self.ring, 1)), &self.x])
    }

    /// `(mu_Δ ⊗_{Δ_n} id)` on `[A_{n+3}] -> [A_{n+2}]`.
    pub fn mu_delta_tensor_id(&self) -> Morphism {
        let b = self.x_beta11();
        chain(&[&b, &tid(&self.x_next, 1), &b, &tid(self.mu_delta(), 1)])
    }

    /// `(id ⊗_{Δ_n} coev_Δ)` on `[A_{n+1}] -> [A_{n+3}]`.
    pub fn id_tensor_coev(&self) -> Morphism {
        chain(&[
            &xt(&self.x, &braiding(&self.ring, 2, 1)),
            &tid(&self.coev_delta(), 1),
            &self.x_next,
        ])
    }

    /// The relative trace `Δ_{n+1} -> Δ_n`.
    pub fn relative_trace(&self) -> Morphism {
        chain(&[
            &self.ev_delta(),
            &self.braid_delta(),
            &self.mu_delta_tensor_id(),
            &self.id_tensor_coev(),
        ])
    }

    /// The pairing endomorphism of `Δ_{n+1}` whose invertibility is the
    /// non-degeneracy of the trace form.
    pub fn pairing(&self) -> Morphism {
        let tr_mu = chain(&[&self.relative_trace(), self.mu_delta()]);
        let left = chain(&[&self.x_next, &tid(&tr_mu, 1)]);
        chain(&[&left, &self.id_tensor_coev()])
    }
}
