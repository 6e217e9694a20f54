use crate::cdmod::{bounded_coefficient_solve, CdLinearMap, ModElement, PartialUnknowns};
use crate::conformal::{
    check_derivation, check_hom, check_structure_map, lambdas, unit, Bimodule, ConformalAlgebra, MapKind, SesqMap,
    Setting, StructureMap,
};
use crate::hochschild::{differential, map_cochain, report_nonzero, Cochain};
use crate::nonabelian::{cocycle_of_extension, Extension, NonAbelianCocycle};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;
use crate::witness;

use super::aut::restrict;
use super::{escalate, Certificate, WellsClass, WellsError, ZeroStatus};

/// `(d_A, d_B) ∈ Der(A) × Der(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerPair {
    da: StructureMap,
    db: StructureMap,
}

fn derivation(d: &CdLinearMap, alg: &ConformalAlgebra) -> Result<StructureMap, WellsError> {
    check_structure_map(d, MapKind::Derivation, Setting::Algebras(alg, alg))
        .map_err(WellsError::NotAStructureMap)
}

impl DerPair {
    pub fn new(
        da: &CdLinearMap,
        db: &CdLinearMap,
        a: &ConformalAlgebra,
        b: &ConformalAlgebra,
    ) -> Result<Self, WellsError> {
        Ok(DerPair {
            da: derivation(da, a)?,
            db: derivation(db, b)?,
        })
    }

    pub fn zero(a: &ConformalAlgebra, b: &ConformalAlgebra) -> Self {
        Self::new(&CdLinearMap::zero(a.rank(), a.rank()), &CdLinearMap::zero(b.rank(), b.rank()), a, b)
            .expect("zero derivations")
    }

    pub fn da(&self) -> &CdLinearMap {
        &self.da.underlying
    }

    pub fn db(&self) -> &CdLinearMap {
        &self.db.underlying
    }

    /// Componentwise commutator.
    pub fn bracket(&self, o: &DerPair) -> DerPair {
        let comm = |x: &CdLinearMap, y: &CdLinearMap| StructureMap {
            underlying: y.then(x).sub(&x.then(y)),
            kind: MapKind::Derivation,
        };
        DerPair {
            da: comm(self.da(), o.da()),
            db: comm(self.db(), o.db()),
        }
    }

    fn acts_on(&self, ra: usize, rb: usize) -> Result<(), WellsError> {
        if self.da().rows() != ra || self.db().rows() != rb {
            return Err(WellsError::ShapeMismatch);
        }
        Ok(())
    }
}

/// `A` as a `B`-bimodule through `▷` and `◁`.
pub fn bimodule_of(c: &NonAbelianCocycle) -> Bimodule {
    Bimodule::from_maps(c.b().clone(), c.a().carrier().clone(), c.left().clone(), c.right().clone())
}

/// `d_A(b▷a) = b▷d_A(a) + d_B(b)▷a` and `d_A(a◁b) = a◁d_B(b) + d_A(a)◁b`.
pub fn check_pair_in_g(d: &DerPair, m: &Bimodule) -> Result<CheckReport, WellsError> {
    let (ra, rb) = (m.rank(), m.algebra().rank());
    d.acts_on(ra, rb)?;
    let (da, db) = (d.da(), d.db());
    let l = Poly::lambda(1, 1);
    let mut rep = check_identity("der1", &[rb, ra], |t| {
        let (y, x) = (unit(rb, t[0], 1), unit(ra, t[1], 1));
        da.on(&m.act_left(&y, &x, &l))
            .sub(&m.act_left(&y, &da.on(&x), &l))
            .sub(&m.act_left(&db.on(&y), &x, &l))
    });
    rep.merge(check_identity("der2", &[ra, rb], |t| {
        let (x, y) = (unit(ra, t[0], 1), unit(rb, t[1], 1));
        da.on(&m.act_right(&x, &y, &l))
            .sub(&m.act_right(&x, &db.on(&y), &l))
            .sub(&m.act_right(&da.on(&x), &y, &l))
    }));
    Ok(rep)
}

/// `Θ(d)(φ) = d_A∘φ − Σᵢ φ∘(id ⊗ … ⊗ d_B ⊗ … ⊗ id)` on a cochain `Bⁿ → A`.
pub fn theta_action(d: &DerPair, phi: &Cochain) -> Result<Cochain, WellsError> {
    let (ra, rb) = (d.da().rows(), d.db().rows());
    let n = phi.degree();
    if n == 0 || phi.target() != ra || phi.slots().iter().any(|&s| s != rb) {
        return Err(WellsError::ShapeMismatch);
    }
    let k = n - 1;
    let ls = lambdas(k, k);
    let (da, db) = (d.da(), d.db());
    Ok(SesqMap::from_fn(vec![rb; n], ra, |t| {
        let args: Vec<ModElement> = t.iter().map(|&j| unit(rb, j, k)).collect();
        let mut out = da.on(&phi.eval(&args, &ls));
        for i in 0..n {
            let mut a = args.clone();
            a[i] = db.on(&a[i]);
            out = out.sub(&phi.eval(&a, &ls));
        }
        out
    }))
}

fn abelian_data(e: &Extension) -> Result<(NonAbelianCocycle, Bimodule), WellsError> {
    if !e.a().is_trivial() {
        return Err(WellsError::NotAbelian);
    }
    let c = cocycle_of_extension(e);
    let m = bimodule_of(&c);
    Ok((c, m))
}

fn require_in_g(d: &DerPair, m: &Bimodule) -> Result<(), WellsError> {
    let rep = check_pair_in_g(d, m)?;
    if !rep.passed() {
        return Err(WellsError::NotInG(rep));
    }
    Ok(())
}

fn flatten(c: &Cochain) -> Vec<Poly> {
    c.values().iter().flat_map(|v| v.coeffs().iter().cloned()).collect()
}

/// `𝒲(d_A, d_B) = [Θ(d)(χ)] ∈ H²(B, A)` with its zero test: `f: B → A` with
/// `d₁(f) = Θ(d)(χ)`, searched at ∂-degree `degree` and then at the
/// escalated bound.
pub fn wells_der(d: &DerPair, e: &Extension, degree: u32) -> Result<WellsClass, WellsError> {
    let (c, m) = abelian_data(e)?;
    require_in_g(d, &m)?;
    let target = theta_action(d, c.chi())?;
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let mut status = ZeroStatus::Undecided;
    for deg in [degree, escalate(degree)] {
        let unknowns = PartialUnknowns { count: ra * rb, degree: deg };
        let to_map = |polys: &[Poly]| {
            let entries = (0..ra).map(|i| polys[i * rb..(i + 1) * rb].to_vec()).collect();
            CdLinearMap::new(entries, ra, rb).expect("shape")
        };
        let solved = bounded_coefficient_solve(&unknowns, |p| {
            flatten(&differential(&m, &map_cochain(&to_map(p))).sub(&target))
        });
        match solved {
            Ok(Some(polys)) => {
                let f = to_map(&polys);
                let ok = differential(&m, &map_cochain(&f)) == target;
                status = if witness::record(ok) {
                    ZeroStatus::Zero(f)
                } else {
                    ZeroStatus::Undecided
                };
                break;
            }
            Ok(None) => status = ZeroStatus::NonZero(Certificate::NoWitnessWithin { degree: deg }),
            Err(_) => {
                status = ZeroStatus::Undecided;
                break;
            }
        }
    }
    Ok(WellsClass {
        representative: vec![target],
        status,
    })
}

/// `θ ∘ [[d_A, f], [0, d_B]] ∘ θ⁻¹`, i.e. `a + γ(b) ↦ d_A(a) + f(b) + γ(d_B(b))`,
/// without any check.
pub fn lift_unchecked(d: &DerPair, f: &CdLinearMap, e: &Extension) -> CdLinearMap {
    let theta = e.theta();
    let inner = CdLinearMap::block(d.da(), f, &CdLinearMap::zero(d.db().rows(), d.da().rows()), d.db());
    theta
        .compose(&inner)
        .and_then(|m| m.compose(&theta.inverse()?))
        .expect("validated extension")
}

/// The derivation of `E` extending `d` through a witness `f` with
/// `d₁(f) = Θ(d)(χ)`.
pub fn extend_derivation(d: &DerPair, f: &CdLinearMap, e: &Extension) -> Result<StructureMap, WellsError> {
    let (c, m) = abelian_data(e)?;
    let (ra, rb) = (c.a().rank(), c.b().rank());
    d.acts_on(ra, rb)?;
    if (f.rows(), f.cols()) != (ra, rb) {
        return Err(WellsError::ShapeMismatch);
    }
    let mut rep = check_pair_in_g(d, &m)?;
    let target = theta_action(d, c.chi())?;
    rep.merge(report_nonzero("wells-witness", &differential(&m, &map_cochain(f)).sub(&target)));
    if !rep.passed() {
        return Err(WellsError::InvalidWitness(rep));
    }
    derivation(&lift_unchecked(d, f, e), e.e())
}

/// `κ̄(d_E) = (d_E|_A, β∘d_E∘γ)` for a derivation `d_E` of `E` with `d_E(A) ⊆ A`.
pub fn kappa_der(d_e: &CdLinearMap, e: &Extension) -> Result<DerPair, WellsError> {
    let re = e.e().rank();
    if (d_e.rows(), d_e.cols()) != (re, re) {
        return Err(WellsError::ShapeMismatch);
    }
    derivation(d_e, e.e())?;
    let (da, db) = restrict(d_e, e)?;
    DerPair::new(&da, &db, e.a(), e.b())
}

fn require_split(e: &Extension) -> Result<(), WellsError> {
    if !e.a().is_trivial() {
        return Err(WellsError::NotAbelian);
    }
    if !check_hom(e.gamma(), e.b(), e.e()).passed() {
        return Err(WellsError::NotSplit);
    }
    Ok(())
}

fn relabel(mut rep: CheckReport, name: &str) -> CheckReport {
    for f in &mut rep.failures {
        f.identity = name.to_string();
    }
    rep
}

/// `(d_E − η(κ̄(d_E)))∘γ` read in `A`; columns leaving `A` are reported.
fn z1_part(d_e: &CdLinearMap, d: &DerPair, e: &Extension) -> Result<CdLinearMap, CheckReport> {
    let (ra, rb) = (e.a().rank(), e.b().rank());
    let eta = lift_unchecked(d, &CdLinearMap::zero(ra, rb), e);
    let r = e.gamma().then(&d_e.sub(&eta));
    let inv = e.theta().inverse().expect("validated extension");
    let mut rep = CheckReport::pass();
    let cols: Vec<ModElement> = (0..rb)
        .map(|j| {
            let v = inv.on(&r.column(j));
            if !v.slice(ra, rb).is_zero() {
                rep.merge(CheckReport::fail("z1-part", vec![j], v.clone()));
            }
            v.slice(0, ra)
        })
        .collect();
    if rep.passed() {
        Ok(CdLinearMap::from_columns(&cols, ra))
    } else {
        Err(rep)
    }
}

/// `d_E ↦ (κ̄(d_E), φ)` on a split abelian extension, where `φ ∈ 𝒵¹(B, A)`.
pub fn decompose_split_derivation(
    e: &Extension,
    d_e: &CdLinearMap,
) -> Result<(DerPair, CdLinearMap), WellsError> {
    require_split(e)?;
    let d = kappa_der(d_e, e)?;
    let phi = z1_part(d_e, &d, e).map_err(WellsError::InvalidWitness)?;
    Ok((d, phi))
}

/// On a split abelian extension, check for each sample `d_E ∈ Der_A(E)` that
/// `κ̄(d_E) ∈ g(A, B)`, that `η(κ̄(d_E))` is a derivation, and that the rest
/// `(d_E − η(κ̄(d_E)))∘γ` is a 1-cocycle `B → A`; then check that `η` preserves
/// brackets on sample pairs. Samples outside `Der_A(E)` are reported under
/// `derivation` or `preserves-A` and skipped.
pub fn split_der_decomposition(e: &Extension, samples: &[CdLinearMap]) -> Result<CheckReport, WellsError> {
    require_split(e)?;
    let (_, m) = abelian_data(e)?;
    let (ra, rb, re) = (e.a().rank(), e.b().rank(), e.e().rank());
    let zero = CdLinearMap::zero(ra, rb);
    let eta = |d: &DerPair| lift_unchecked(d, &zero, e);
    let theta = e.theta();
    let inv = theta.inverse().expect("validated extension");
    let mut rep = CheckReport::pass();
    let mut pairs = Vec::new();
    for d_e in samples {
        if (d_e.rows(), d_e.cols()) != (re, re) {
            return Err(WellsError::ShapeMismatch);
        }
        let r = check_derivation(d_e, e.e());
        if !r.passed() {
            rep.merge(relabel(r, "derivation"));
            continue;
        }
        let block = inv.compose(d_e).and_then(|x| x.compose(&theta)).expect("shapes");
        let leak = block.sub_block(ra, rb, 0, ra);
        if !leak.is_zero() {
            for j in 0..ra {
                if !leak.column(j).is_zero() {
                    rep.merge(CheckReport::fail("preserves-A", vec![j], leak.column(j)));
                }
            }
            continue;
        }
        let d = kappa_der(d_e, e)?;
        rep.merge(relabel(check_pair_in_g(&d, &m)?, "in-g"));
        rep.merge(relabel(check_derivation(&eta(&d), e.e()), "eta-derivation"));
        match z1_part(d_e, &d, e) {
            Ok(phi) => rep.merge(report_nonzero("z1-part", &differential(&m, &map_cochain(&phi)))),
            Err(r) => rep.merge(r),
        }
        pairs.push(d);
    }
    for d1 in &pairs {
        for d2 in &pairs {
            let lhs = eta(&d1.bracket(d2));
            let (x, y) = (eta(d1), eta(d2));
            let diff = lhs.sub(&y.then(&x).sub(&x.then(&y)));
            for j in 0..diff.cols() {
                if !diff.column(j).is_zero() {
                    rep.merge(CheckReport::fail("eta-bracket", vec![j], diff.column(j)));
                }
            }
        }
    }
    Ok(rep)
}
