use crate::cdmod::{image_basis, kernel_basis, same_submodule, solve_over_kd, CdLinearMap, ModElement};
use crate::conformal::{check_hom, unit, Bimodule, ConformalAlgebra, SesqMap};
use crate::hochschild::{differential, Cochain};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;

use super::{check_crossed, CrossedModule, HomotopyError, TwoTermSHAC};

/// `ϱ: A → X` and `ς` on a chosen k[∂]-basis of `Im β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections {
    pub varrho: CdLinearMap,
    /// Columns form a basis of `Im β ⊂ X`.
    pub im_basis: CdLinearMap,
    /// Column `i` is `ς` of basis vector `i`.
    pub varsigma: CdLinearMap,
}

/// `0 → M →α Y →β X →γ A → 0` with `(Y, X, β)` a crossed module and `M` an
/// `A`-bimodule with zero product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedExtension {
    m: Bimodule,
    crossed: CrossedModule,
    alpha: CdLinearMap,
    gamma: CdLinearMap,
    sections: Option<Sections>,
}

fn relabel(mut rep: CheckReport, name: &str) -> CheckReport {
    for f in &mut rep.failures {
        f.identity = name.to_string();
    }
    rep
}

fn columns(m: &CdLinearMap) -> Vec<ModElement> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// Column-by-column equality, failures labelled `name` with the column index.
fn columns_equal(name: &str, lhs: &CdLinearMap, rhs: &CdLinearMap) -> CheckReport {
    check_identity(name, &[lhs.cols()], |t| lhs.column(t[0]).sub(&rhs.column(t[0])))
}

impl CrossedExtension {
    /// Verify the crossed module, that `α` and `γ` are homomorphisms, and
    /// exactness at every node.
    pub fn new(
        m: Bimodule,
        crossed: CrossedModule,
        alpha: CdLinearMap,
        gamma: CdLinearMap,
    ) -> Result<Self, HomotopyError> {
        let (rm, ry, rx, ra) = (
            m.rank(),
            crossed.y().rank(),
            crossed.x().rank(),
            m.algebra().rank(),
        );
        if (alpha.rows(), alpha.cols()) != (ry, rm) || (gamma.rows(), gamma.cols()) != (ra, rx) {
            return Err(HomotopyError::ShapeMismatch);
        }
        let rep = check_crossed(&crossed);
        if !rep.passed() {
            return Err(HomotopyError::InvalidCrossedModule(rep));
        }
        let trivial_m = ConformalAlgebra::trivial(m.carrier().clone());
        let mut rep = relabel(check_hom(&alpha, &trivial_m, crossed.y()), "alpha-hom");
        rep.merge(relabel(check_hom(&gamma, crossed.x(), m.algebra()), "gamma-hom"));
        if !rep.passed() {
            return Err(HomotopyError::InvalidExtension(rep));
        }
        let beta = crossed.rho();
        if !kernel_basis(&alpha).is_empty() {
            return Err(HomotopyError::NotExact("alpha-injective"));
        }
        if !same_submodule(&image_basis(&alpha), &kernel_basis(beta)) {
            return Err(HomotopyError::NotExact("at-Y"));
        }
        if !same_submodule(&image_basis(beta), &kernel_basis(&gamma)) {
            return Err(HomotopyError::NotExact("at-X"));
        }
        if !same_submodule(&image_basis(&gamma), &columns(&CdLinearMap::identity(ra))) {
            return Err(HomotopyError::NotExact("gamma-surjective"));
        }
        Ok(CrossedExtension {
            m,
            crossed,
            alpha,
            gamma,
            sections: None,
        })
    }

    /// Attach sections, checking `γϱ = id` (`section-varrho`), that the basis
    /// spans `Im β` freely (`im-basis`), `βς = id` on it (`section-varsigma`),
    /// and that the actions on `M` are the induced ones (`induced-left`,
    /// `induced-right`).
    pub fn with_sections(
        mut self,
        varrho: CdLinearMap,
        im_basis: CdLinearMap,
        varsigma: CdLinearMap,
    ) -> Result<Self, HomotopyError> {
        let (rm, ry, rx, ra) = (self.m.rank(), self.y().rank(), self.x().rank(), self.a().rank());
        let k = im_basis.cols();
        if (varrho.rows(), varrho.cols()) != (rx, ra)
            || im_basis.rows() != rx
            || (varsigma.rows(), varsigma.cols()) != (ry, k)
        {
            return Err(HomotopyError::ShapeMismatch);
        }
        let beta = self.beta();
        let mut rep = columns_equal(
            "section-varrho",
            &varrho.then(&self.gamma),
            &CdLinearMap::identity(ra),
        );
        let basis = columns(&im_basis);
        if !kernel_basis(&im_basis).is_empty() || !same_submodule(&basis, &image_basis(beta)) {
            rep.merge(CheckReport::fail("im-basis", vec![], unit(1, 0, 0)));
        }
        rep.merge(columns_equal("section-varsigma", &varsigma.then(beta), &im_basis));
        let l = Poly::lambda(1, 1);
        let alpha = &self.alpha;
        let c = &self.crossed;
        rep.merge(check_identity("induced-left", &[ra, rm], |t| {
            let (a, v) = (unit(ra, t[0], 1), unit(rm, t[1], 1));
            alpha
                .on(&self.m.act_left(&a, &v, &l))
                .sub(&c.act_left(&varrho.on(&a), &alpha.on(&v), &l))
        }));
        rep.merge(check_identity("induced-right", &[rm, ra], |t| {
            let (v, a) = (unit(rm, t[0], 1), unit(ra, t[1], 1));
            alpha
                .on(&self.m.act_right(&v, &a, &l))
                .sub(&c.act_right(&alpha.on(&v), &varrho.on(&a), &l))
        }));
        if !rep.passed() {
            return Err(HomotopyError::InvalidSections(rep));
        }
        self.sections = Some(Sections {
            varrho,
            im_basis,
            varsigma,
        });
        Ok(self)
    }

    /// [`with_sections`](Self::with_sections) with the Smith-form basis of
    /// `Im β` and `ς` read off from particular preimages.
    pub fn with_default_sections(self, varrho: CdLinearMap) -> Result<Self, HomotopyError> {
        let basis = image_basis(self.beta());
        let pre: Vec<ModElement> = basis
            .iter()
            .map(|v| solve_over_kd(self.beta(), v).expect("image vector").particular)
            .collect();
        let im = CdLinearMap::from_columns(&basis, self.x().rank());
        let vs = CdLinearMap::from_columns(&pre, self.y().rank());
        self.with_sections(varrho, im, vs)
    }

    pub fn m(&self) -> &Bimodule {
        &self.m
    }

    pub fn a(&self) -> &ConformalAlgebra {
        self.m.algebra()
    }

    pub fn x(&self) -> &ConformalAlgebra {
        self.crossed.x()
    }

    pub fn y(&self) -> &ConformalAlgebra {
        self.crossed.y()
    }

    pub fn crossed(&self) -> &CrossedModule {
        &self.crossed
    }

    pub fn alpha(&self) -> &CdLinearMap {
        &self.alpha
    }

    pub fn beta(&self) -> &CdLinearMap {
        self.crossed.rho()
    }

    pub fn gamma(&self) -> &CdLinearMap {
        &self.gamma
    }

    pub fn sections(&self) -> Option<&Sections> {
        self.sections.as_ref()
    }

    fn split(&self) -> Result<&Sections, HomotopyError> {
        self.sections.as_ref().ok_or(HomotopyError::NotSplit)
    }

    /// `ς(v)` for `v ∈ Im β`, through the coordinates of `v` on the basis.
    fn varsigma_of(s: &Sections, v: &ModElement) -> ModElement {
        let c = solve_over_kd(&s.im_basis, v).expect("value lies in Im β").particular;
        s.varsigma.on(&c)
    }

    /// The unique `v ∈ M` with `α(v) = y`.
    fn alpha_inverse(&self, y: &ModElement) -> Option<ModElement> {
        solve_over_kd(&self.alpha, y).map(|s| s.particular)
    }

    /// `g_λ(a, b) = ς(ϱ(a) ∘_λ ϱ(b) − ϱ(a ∘_λ b))`, valued in `Y`.
    fn g_cochain(&self, s: &Sections) -> SesqMap {
        let (ra, ry) = (self.a().rank(), self.y().rank());
        let l = Poly::lambda(1, 1);
        SesqMap::from_fn(vec![ra, ra], ry, |t| {
            let (a, b) = (unit(ra, t[0], 1), unit(ra, t[1], 1));
            let v = self
                .x()
                .product(&s.varrho.on(&a), &s.varrho.on(&b), &l)
                .sub(&s.varrho.on(&self.a().product(&a, &b, &l)));
            Self::varsigma_of(s, &v)
        })
    }

    /// The four-term `f` built from `g`, valued in `Y`.
    fn f_from_g(&self, s: &Sections, g: &SesqMap) -> SesqMap {
        let (ra, ry) = (self.a().rank(), self.y().rank());
        let (l1, l2) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
        let l12 = &l1 + &l2;
        let gv = |x: &ModElement, y: &ModElement, nu: &Poly| {
            g.eval(&[x.clone(), y.clone()], std::slice::from_ref(nu))
        };
        let c = &self.crossed;
        SesqMap::from_fn(vec![ra; 3], ry, |t| {
            let [a, b, e] = [t[0], t[1], t[2]].map(|i| unit(ra, i, 2));
            c.act_left(&s.varrho.on(&a), &gv(&b, &e, &l2), &l1)
                .sub(&gv(&self.a().product(&a, &b, &l1), &e, &l12))
                .add(&gv(&a, &self.a().product(&b, &e, &l2), &l1))
                .sub(&c.act_right(&gv(&a, &b, &l1), &s.varrho.on(&e), &l12))
        })
    }

    /// Pull a `Y`-valued cochain back to `M`, or report the first tuple whose
    /// value is outside `Im α` under `name`.
    fn pull_back(&self, c: &SesqMap, name: &str) -> Result<Cochain, CheckReport> {
        let mut out = SesqMap::zero(c.slots().to_vec(), self.m.rank());
        for t in c.tuples() {
            match self.alpha_inverse(c.get(&t)) {
                Some(v) => out.set(&t, v),
                None => {
                    let d = self.beta().on(c.get(&t));
                    return Err(CheckReport::fail(name, t, d));
                }
            }
        }
        Ok(out)
    }

    /// Replace `ϱ` by `ϱ + β∘η` for `η: A → Y`. The correction is
    /// `ḡ − g − g̃` read in `M`.
    pub fn change_varrho(&self, eta: &CdLinearMap) -> Result<SectionChange, HomotopyError> {
        let s = self.split()?;
        let (ra, ry) = (self.a().rank(), self.y().rank());
        if (eta.rows(), eta.cols()) != (ry, ra) {
            return Err(HomotopyError::ShapeMismatch);
        }
        let bar = s.varrho.add(&eta.then(self.beta()));
        let ext = self
            .clone()
            .with_sections(bar.clone(), s.im_basis.clone(), s.varsigma.clone())?;
        let l = Poly::lambda(1, 1);
        let c = &self.crossed;
        let tilde = SesqMap::from_fn(vec![ra, ra], ry, |t| {
            let (a, b) = (unit(ra, t[0], 1), unit(ra, t[1], 1));
            let (ea, eb) = (eta.on(&a), eta.on(&b));
            c.act_left(&bar.on(&a), &eb, &l)
                .add(&c.act_right(&ea, &bar.on(&b), &l))
                .sub(&eta.on(&self.a().product(&a, &b, &l)))
                .sub(&self.y().product(&ea, &eb, &l))
        });
        let g = self.g_cochain(s);
        let gbar = ext.g_cochain(ext.split()?);
        let diff = gbar.sub(&g).sub(&tilde);
        let correction = self
            .pull_back(&diff, "correction-in-M")
            .map_err(HomotopyError::VerificationFailed)?;
        SectionChange::verify(self, ext, correction)
    }

    /// Replace `ς` by `ς + α∘κ` for `κ` from the `Im β` basis to `M`. The
    /// correction is `−h` with `h = (ς − ς')(ϱ(a) ∘ ϱ(b) − ϱ(a ∘ b))`.
    pub fn change_varsigma(&self, kappa: &CdLinearMap) -> Result<SectionChange, HomotopyError> {
        let s = self.split()?;
        if (kappa.rows(), kappa.cols()) != (self.m.rank(), s.im_basis.cols()) {
            return Err(HomotopyError::ShapeMismatch);
        }
        let vs = s.varsigma.add(&kappa.then(&self.alpha));
        let ext = self
            .clone()
            .with_sections(s.varrho.clone(), s.im_basis.clone(), vs)?;
        let s2 = ext.split()?;
        let ra = self.a().rank();
        let l = Poly::lambda(1, 1);
        let h = SesqMap::from_fn(vec![ra, ra], self.y().rank(), |t| {
            let (a, b) = (unit(ra, t[0], 1), unit(ra, t[1], 1));
            let v = self
                .x()
                .product(&s.varrho.on(&a), &s.varrho.on(&b), &l)
                .sub(&s.varrho.on(&self.a().product(&a, &b, &l)));
            Self::varsigma_of(s, &v).sub(&Self::varsigma_of(s2, &v))
        });
        let h = self
            .pull_back(&h, "correction-in-M")
            .map_err(HomotopyError::VerificationFailed)?;
        SectionChange::verify(self, ext, h.neg())
    }
}

/// The output of [`crossed_extension_theta`]: `g` in `Y` and the 3-cocycle `f`
/// in `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionClass {
    pub g: SesqMap,
    pub f: Cochain,
}

/// The 3-cocycle of a split crossed extension, verified to land in `M`
/// (`lands-in-M`) and to be closed (`cocycle`).
pub fn crossed_extension_theta(s: &CrossedExtension) -> Result<ExtensionClass, HomotopyError> {
    let sec = s.split()?;
    let g = s.g_cochain(sec);
    let fy = s.f_from_g(sec, &g);
    let f = s
        .pull_back(&fy, "lands-in-M")
        .map_err(HomotopyError::VerificationFailed)?;
    let df = differential(&s.m, &f);
    if let Some((t, v)) = df.first_nonzero() {
        return Err(HomotopyError::VerificationFailed(CheckReport::fail("cocycle", t, v)));
    }
    Ok(ExtensionClass { g, f })
}

/// A change of sections with its correction 2-cochain, verified:
/// `f_new − f = d₂(correction)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionChange {
    pub extension: CrossedExtension,
    pub correction: Cochain,
    pub before: Cochain,
    pub after: Cochain,
}

impl SectionChange {
    fn verify(
        old: &CrossedExtension,
        new: CrossedExtension,
        correction: Cochain,
    ) -> Result<SectionChange, HomotopyError> {
        let before = crossed_extension_theta(old)?.f;
        let after = crossed_extension_theta(&new)?.f;
        let d = differential(&old.m, &correction);
        let ra = old.a().rank();
        let rep = check_identity("coboundary", &[ra, ra, ra], |t| {
            after.get(t).sub(before.get(t)).sub(d.get(t))
        });
        if !crate::witness::record(rep.passed()) {
            return Err(HomotopyError::VerificationFailed(rep));
        }
        Ok(SectionChange {
            extension: new,
            correction,
            before,
            after,
        })
    }
}

/// The skeletal structure `M →0 A` obtained by transfer from the strict
/// structure `Y → X`:
/// `m³(a, b, c) = p(ϱ(a) ▷ g(b, c) − g(a, b) ◁ ϱ(c))` with `p = 1 − ςβ`.
pub fn skeletal_model(s: &CrossedExtension) -> Result<TwoTermSHAC, HomotopyError> {
    let sec = s.split()?;
    let g = s.g_cochain(sec);
    let (ra, ry) = (s.a().rank(), s.y().rank());
    let (l1, l2) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
    let l12 = &l1 + &l2;
    let c = &s.crossed;
    let projected = SesqMap::from_fn(vec![ra; 3], ry, |t| {
        let [a, b, e] = [t[0], t[1], t[2]].map(|i| unit(ra, i, 2));
        let gbe = g.eval(&[b.clone(), e.clone()], std::slice::from_ref(&l2));
        let gab = g.eval(&[a.clone(), b], std::slice::from_ref(&l1));
        let y = c
            .act_left(&sec.varrho.on(&a), &gbe, &l1)
            .sub(&c.act_right(&gab, &sec.varrho.on(&e), &l12));
        y.sub(&CrossedExtension::varsigma_of(sec, &s.beta().on(&y)))
    });
    let m3 = s
        .pull_back(&projected, "lands-in-M")
        .map_err(HomotopyError::VerificationFailed)?;
    let a = s.a();
    TwoTermSHAC::new(
        s.m.carrier().clone(),
        a.carrier().clone(),
        CdLinearMap::zero(a.rank(), s.m.rank()),
        a.mult().clone(),
        s.m.left().clone(),
        s.m.right().clone(),
        m3,
    )
}
