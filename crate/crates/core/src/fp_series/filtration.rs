use super::{nottingham_generators, Depth, SeriesError, TruncSeries};
use crate::group_engine::GroupElement;

/// A subgroup of `N/N_M` stored as one normalized element per occupied depth.
///
/// The filtration `N_d` is central with factors of order `p`, and the
/// coefficient `a_{d+1}` is additive on `N_d/N_{d+1}`. An element sifts
/// through the table by cancelling its leading coefficient against the stored
/// element of the same depth. Once every stored power and pairwise commutator
/// sifts to the identity, the products `∏ b_d^{e_d}` are exactly the
/// generated subgroup, of order `p^(number of depths)`.
#[derive(Clone, Debug)]
pub struct FiltrationSubgroup {
    p: u32,
    precision: usize,
    // layers[d] holds the element of depth d with a_{d+1} = 1
    layers: Vec<Option<TruncSeries>>,
}

impl FiltrationSubgroup {
    pub fn trivial(p: u32, precision: usize) -> Self {
        FiltrationSubgroup { p, precision, layers: vec![None; precision] }
    }

    /// The image of `N_r` in `N/N_M`: all elements of depth at least `r`.
    pub fn depth_filter(p: u32, precision: usize, r: usize) -> Result<Self, SeriesError> {
        let mut out = Self::trivial(p, precision);
        for d in r.max(1)..precision {
            let mut c = vec![0i64; precision];
            c[0] = 1;
            c[d] = 1;
            out.layers[d] = Some(TruncSeries::from_coeffs(p, &c)?);
        }
        Ok(out)
    }

    pub fn generated_by(p: u32, precision: usize, gens: &[TruncSeries]) -> Self {
        let mut s = Self::trivial(p, precision);
        for g in gens {
            s.absorb(g.clone());
        }
        s.close(&[]);
        s
    }

    /// Smallest subgroup containing `seeds` and normalized by `ambient`.
    pub fn normal_closure(p: u32, precision: usize, seeds: &[TruncSeries], ambient: &[TruncSeries]) -> Self {
        let mut s = Self::trivial(p, precision);
        for g in seeds {
            s.absorb(g.clone());
        }
        s.close(ambient);
        s
    }

    /// Residue of `f` after cancelling leading terms against the stored layers.
    pub fn sift(&self, f: &TruncSeries) -> TruncSeries {
        let mut f = f.clone();
        while let Depth::Finite(d) = f.depth() {
            let Some(base) = &self.layers[d] else { break };
            let lead = f.coeff(d + 1).value() as i64;
            f = f.op(&base.power(-lead));
        }
        f
    }

    pub fn contains(&self, f: &TruncSeries) -> bool {
        self.sift(f).is_identity()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Occupied depths in increasing order.
    pub fn depths(&self) -> Vec<usize> {
        self.layers.iter().enumerate().filter(|(_, l)| l.is_some()).map(|(d, _)| d).collect()
    }

    /// `log_p` of the subgroup order.
    pub fn log_order(&self) -> usize {
        self.layers.iter().filter(|l| l.is_some()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.log_order() == 0
    }

    pub fn elements_of_basis(&self) -> Vec<TruncSeries> {
        self.layers.iter().flatten().cloned().collect()
    }

    /// Sifts `f` and stores the normalized residue; true if the subgroup grew.
    fn absorb(&mut self, f: TruncSeries) -> bool {
        let r = self.sift(&f);
        match r.depth() {
            Depth::Infinite => false,
            Depth::Finite(d) => {
                let lead = r.coeff(d + 1);
                let scale = lead.inv().expect("leading coefficient is nonzero").value() as i64;
                self.layers[d] = Some(r.power(scale));
                true
            }
        }
    }

    fn close(&mut self, ambient: &[TruncSeries]) {
        loop {
            let basis = self.elements_of_basis();
            let mut grew = false;
            for (i, x) in basis.iter().enumerate() {
                grew |= self.absorb(x.power(self.p as i64));
                for y in &basis[i + 1..] {
                    grew |= self.absorb(commutator(x, y));
                }
                for g in ambient {
                    grew |= self.absorb(commutator(x, g));
                }
            }
            if !grew {
                return;
            }
        }
    }
}

fn commutator(x: &TruncSeries, y: &TruncSeries) -> TruncSeries {
    x.commutator(y).expect("operands share p and precision")
}

/// Lower central series `γ_1 ⊇ γ_2 ⊇ …` of `N/N_M` generated by the images of
/// `a` and `b`, computed by commutator closure and ending at the trivial group.
pub fn lower_central_filtration(p: u32, precision: usize) -> Result<Vec<FiltrationSubgroup>, SeriesError> {
    let (a, b) = nottingham_generators(p, precision)?;
    let gens = [a, b];
    let mut series = vec![FiltrationSubgroup::generated_by(p, precision, &gens)];
    while !series.last().expect("nonempty").is_trivial() {
        let current = series.last().expect("nonempty");
        let seeds: Vec<TruncSeries> = current
            .elements_of_basis()
            .iter()
            .flat_map(|c| gens.iter().map(move |g| commutator(c, g)))
            .collect();
        series.push(FiltrationSubgroup::normal_closure(p, precision, &seeds, &gens));
    }
    Ok(series)
}
