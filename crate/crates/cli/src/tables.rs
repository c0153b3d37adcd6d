//! The `tables` emitters.

use anyhow::Result;

use schurhopf::disk::{
    disk_potential, hurwitz_series, p1_partition_function, vacuum_slice_exponents,
};
use schurhopf::hurwitz::hurwitz_oracle;
use schurhopf::{partitions_of, ExactScalar, Monomial, Rational};

use crate::config::ScalarArg;
use crate::render::Table;

/// Substitute whatever was given on the command line.
pub struct Specialize {
    pub u0: Option<Rational>,
    pub eps: Option<ScalarArg>,
}

impl Specialize {
    fn apply(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let mut x = match &self.u0 {
            Some(u) => x.subs_u0(u),
            None => x.clone(),
        };
        if let Some(ScalarArg::Value(e)) = &self.eps {
            x = x.subs_eps(e)?;
        }
        Ok(x)
    }

    fn describe(&self) -> String {
        let u0 = self
            .u0
            .as_ref()
            .map_or("symbolic".to_string(), |u| u.to_string());
        let eps = match &self.eps {
            Some(ScalarArg::Value(e)) => e.to_string(),
            _ => "symbolic".to_string(),
        };
        format!("u0: {u0}, eps: {eps} (hbar = eps^2)")
    }
}

fn exponent_headers(k_max: usize) -> Vec<String> {
    (0..=k_max).map(|k| format!("E{k}/hbar")).collect()
}

pub fn disk(weight: usize, k_max: usize, at: &Specialize) -> Result<Table> {
    let pot = disk_potential(weight, k_max);
    let mut rows = Vec::new();
    for amp in &pot.amplitudes {
        let mut row = vec![
            amp.partition.to_string(),
            at.apply(&amp.prefactor)?.to_string(),
        ];
        for e in &amp.exponents {
            row.push(at.apply(e)?.to_string());
        }
        rows.push(row);
    }
    let mut header = vec!["lambda".to_string(), "prefactor".to_string()];
    header.extend(exponent_headers(k_max));
    let mut latex_cols = vec![false];
    latex_cols.extend(std::iter::repeat_n(true, k_max + 2));
    Ok(Table {
        title: format!("disk amplitudes eps^-|lambda| dim/|lambda|! * exp(sum_k t_k E_k/hbar) * s_lambda(p/eps), |lambda| <= {weight}"),
        header,
        rows,
        latex_cols,
        notes: vec![at.describe()],
    })
}

pub fn p1(degree: usize, k_max: usize, at: &Specialize) -> Result<Table> {
    let slices = p1_partition_function(degree, k_max);
    let vacuum = vacuum_slice_exponents(k_max);
    let mut rows = Vec::new();
    for term in &slices[&degree] {
        let mut row = vec![
            term.partition.to_string(),
            at.apply(&term.prefactor)?.to_string(),
        ];
        for (e, v) in term.exponents.iter().zip(&vacuum) {
            row.push(at.apply(&(e.clone() - v.clone()))?.to_string());
        }
        rows.push(row);
    }
    let vac: Vec<String> = vacuum
        .iter()
        .enumerate()
        .map(|(k, v)| at.apply(v).map(|x| format!("t{k}*({x})")))
        .collect::<Result<_>>()?;
    let mut header = vec!["lambda".to_string(), "prefactor".to_string()];
    header.extend((0..=k_max).map(|k| format!("(E{k}-c{k})/hbar")));
    let mut latex_cols = vec![false];
    latex_cols.extend(std::iter::repeat_n(true, k_max + 2));
    Ok(Table {
        title: format!("degree {degree} slice of the P1 partition function"),
        header,
        rows,
        latex_cols,
        notes: vec![
            at.describe(),
            format!("vacuum factor exp({})", vac.join(" + ")),
        ],
    })
}

pub fn hurwitz(n: usize, m: u32) -> Result<Table> {
    let series = hurwitz_series(n, m)?;
    let mut rows = Vec::new();
    for ((size, mm), poly) in &series {
        if *size == 0 {
            continue;
        }
        for mu in partitions_of(*size) {
            let got = poly.coeff(&Monomial::from_partition(&mu));
            let oracle = hurwitz_oracle(*size, *mm, &mu)?;
            rows.push(vec![
                size.to_string(),
                mm.to_string(),
                mu.to_string(),
                got.to_string(),
                oracle.to_string(),
                (got == oracle).to_string(),
            ]);
        }
    }
    Ok(Table {
        title: format!("coefficient of beta^m/m! p_mu, n <= {n}, m <= {m}"),
        header: ["n", "m", "mu", "coefficient", "oracle", "match"]
            .map(String::from)
            .to_vec(),
        rows,
        latex_cols: vec![false, false, false, true, true, false],
        notes: vec!["u0 = 0, t1 = beta, other t = 0, hbar = 1".into()],
    })
}
