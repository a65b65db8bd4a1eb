//! Configurations of lines and points and their full incidence statistics:
//! the incidence count over the point set, the intersection count with
//! multiplicity over the line set, richness of planes and quadrics, and
//! the r(p) histograms the bound verifiers consume.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactalg::{
    monomials_of_degree, rank_and_nullspace, Field, HomogPoly, Matrix, Mono, Scalar,
};
use crate::projgeom::{lines_relation, LinesRelation, ProjLine, ProjPoint, Surface};
use crate::report::Report;

/// A duplicate-free set of lines and points over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    field: Field,
    lines: Vec<ProjLine>,
    points: Vec<ProjPoint>,
}

impl Configuration {
    pub fn new(field: Field, lines: Vec<ProjLine>, points: Vec<ProjPoint>) -> Result<Configuration> {
        for l in &lines {
            if l.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        for p in &points {
            if p.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        let lines: Vec<ProjLine> = lines.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let points: Vec<ProjPoint> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(Configuration {
            field,
            lines,
            points,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }
    pub fn m(&self) -> usize {
        self.lines.len()
    }
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Text serialization: a `field` header, then one record per line and
    /// point. `#` lines are comments.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {}\n", self.field.spec_string());
        for l in &self.lines {
            out.push_str(&format!("line {}\n", l.to_text()));
        }
        for p in &self.points {
            out.push_str(&format!("point {}\n", p.to_text()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Configuration> {
        let mut field: Option<Field> = None;
        let mut lines = Vec::new();
        let mut points = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (kw, rest) = t
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::parse(format!("line {}: bad record `{t}`", lineno + 1)))?;
            match kw {
                "field" => {
                    field = Some(Field::parse(rest.trim())?);
                }
                "line" => {
                    let f = field
                        .as_ref()
                        .ok_or_else(|| Error::parse("`line` record before `field` header"))?;
                    lines.push(ProjLine::parse(f, rest)?);
                }
                "point" => {
                    let f = field
                        .as_ref()
                        .ok_or_else(|| Error::parse("`point` record before `field` header"))?;
                    points.push(ProjPoint::parse(f, rest)?);
                }
                other => {
                    return Err(Error::parse(format!(
                        "line {}: unknown record `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let field = field.ok_or_else(|| Error::parse("missing `field` header"))?;
        Configuration::new(field, lines, points)
    }
}

/// r(p): the number of configuration lines through p.
pub fn multiplicity(lines: &[ProjLine], p: &ProjPoint) -> usize {
    lines.iter().filter(|l| l.contains(p)).count()
}

/// All points where at least two lines meet, with r(p), sorted by
/// canonical coordinates.
pub fn intersection_points(lines: &[ProjLine]) -> Result<Vec<(ProjPoint, usize)>> {
    let mut pts: BTreeSet<ProjPoint> = BTreeSet::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if let LinesRelation::Meet { at, .. } = lines_relation(&lines[i], &lines[j])? {
                pts.insert(at);
            }
        }
    }
    Ok(pts
        .into_iter()
        .map(|p| {
            let r = multiplicity(lines, &p);
            (p, r)
        })
        .collect())
}

/// Full incidence statistics of a configuration.
#[derive(Debug, Clone)]
pub struct IncidenceReport {
    pub m: usize,
    pub n: usize,
    /// I(L,P) = sum of r(p) over the point set (definition (1.1.2)-style).
    pub i_lp: usize,
    /// The variant summing r(p)-1 over points of P covered by some line.
    pub i_circ: usize,
    /// Points of P lying on at least one line.
    pub covered_points: usize,
    /// I(L) = sum of (r(p)-1) over intersection points of the line set.
    pub i_l: usize,
    /// sum of binom(r(p),2) over intersection points.
    pub pair_count: usize,
    /// r(p) histogram over intersection points of L (r >= 2).
    pub hist_intersections: BTreeMap<usize, usize>,
    /// r(p) histogram over the point set P (r >= 0).
    pub hist_points: BTreeMap<usize, usize>,
    /// Exact maximum number of configuration lines in one plane.
    pub plane_richness: usize,
    pub plane_witness: Option<Surface>,
    /// Certified lower bound on the maximum number of lines on a quadric.
    pub quadric_richness_lower: usize,
    pub quadric_witness: Option<Surface>,
    pub field_spec: String,
}

impl IncidenceReport {
    /// c_plane^2 = plane_richness^2 / m as an exact fraction (num, den).
    pub fn c_plane_squared(&self) -> (u64, u64) {
        if self.m == 0 {
            return (0, 1);
        }
        let num = (self.plane_richness * self.plane_richness) as u64;
        let den = self.m as u64;
        let g = num_integer::gcd(num.max(1), den);
        if num == 0 {
            (0, 1)
        } else {
            (num / g, den / g)
        }
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.set("m", self.m);
        r.set("n", self.n);
        r.set("i_lp", self.i_lp);
        r.set("i_circ", self.i_circ);
        r.set("covered_points", self.covered_points);
        r.set("i_l", self.i_l);
        r.set("pair_count", self.pair_count);
        r.set("plane_richness", self.plane_richness);
        if let Some(w) = &self.plane_witness {
            r.set("plane_witness", w.to_text());
        }
        r.set("quadric_richness_lower", self.quadric_richness_lower);
        if let Some(w) = &self.quadric_witness {
            r.set("quadric_witness", w.to_text());
        }
        let (cn, cd) = self.c_plane_squared();
        r.set("c_plane_sq", format!("{cn}/{cd}"));
        r.set(
            "c_plane",
            format!("{}/sqrt({})", self.plane_richness, self.m),
        );
        r.set("field", &self.field_spec);
        for (k, v) in &self.hist_intersections {
            r.set(format!("hist_intersections.r{k}"), *v);
        }
        for (k, v) in &self.hist_points {
            r.set(format!("hist_points.r{k}"), *v);
        }
        r
    }
}

/// Rows of the linear system "a degree-d form vanishes on this line":
/// one row per coefficient of the restricted binary form, columns indexed
/// by `monos`.
pub fn line_condition_rows(
    field: &Field,
    monos: &[Mono],
    degree: usize,
    line: &ProjLine,
) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = vec![vec![field.zero(); monos.len()]; degree + 1];
    let (p, q) = line.span();
    for (col, mono) in monos.iter().enumerate() {
        let single = HomogPoly::monomial(field, 4, *mono, field.one());
        let restricted = single.restrict_to_pair(p, q)?;
        for (k, c) in restricted.coeffs.iter().enumerate() {
            rows[k][col] = c.clone();
        }
    }
    Ok(rows)
}

/// Quadrics through all given lines: nullspace basis of the stacked
/// line-condition rows in the 10-dimensional quadric space.
fn quadrics_through_lines(field: &Field, lines: &[&ProjLine]) -> Result<Vec<Surface>> {
    let monos = monomials_of_degree(4, 2);
    let mut rows = Vec::new();
    for l in lines {
        rows.extend(line_condition_rows(field, &monos, 2, l)?);
    }
    let m = Matrix::from_rows(field.clone(), rows)?;
    let (_, basis) = rank_and_nullspace(&m);
    let mut out = Vec::new();
    for v in basis {
        let mut poly = HomogPoly::zero(field, 4, 2);
        for (i, c) in v.iter().enumerate() {
            poly.add_term(&monos[i], c);
        }
        if !poly.is_zero() {
            out.push(Surface::new(poly)?);
        }
    }
    Ok(out)
}

/// Compute every field of the incidence report exactly.
pub fn analyze(config: &Configuration) -> Result<IncidenceReport> {
    let field = config.field().clone();
    let lines = config.lines();
    let points = config.points();
    let m = lines.len();
    let n = points.len();

    // incidences over the point set
    let mut i_lp = 0usize;
    let mut covered = 0usize;
    let mut hist_points: BTreeMap<usize, usize> = BTreeMap::new();
    for p in points {
        let r = multiplicity(lines, p);
        i_lp += r;
        if r >= 1 {
            covered += 1;
        }
        *hist_points.entry(r).or_insert(0) += 1;
    }
    let i_circ = i_lp - covered;

    // pairwise meets: intersection points, spanned planes
    let mut meet_points: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut planes: BTreeSet<Surface> = BTreeSet::new();
    let mut skew = vec![vec![false; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            match lines_relation(&lines[i], &lines[j])? {
                LinesRelation::Meet { at, coplanar_in } => {
                    meet_points.insert(at);
                    planes.insert(coplanar_in);
                }
                LinesRelation::Skew => {
                    skew[i][j] = true;
                    skew[j][i] = true;
                }
                LinesRelation::Equal => unreachable!("configuration lines are distinct"),
            }
        }
    }

    let mut i_l = 0usize;
    let mut pair_count = 0usize;
    let mut hist_intersections: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &meet_points {
        let r = multiplicity(lines, p);
        debug_assert!(r >= 2);
        i_l += r - 1;
        pair_count += r * (r - 1) / 2;
        *hist_intersections.entry(r).or_insert(0) += 1;
    }

    // plane richness: every plane with >= 2 lines is spanned by a meeting
    // pair, so scanning the collected planes is exhaustive
    let mut plane_richness = if m == 0 { 0 } else { 1 };
    let mut plane_witness: Option<Surface> = None;
    let mut plane_counts: Vec<(usize, Surface)> = Vec::new();
    for plane in &planes {
        let mut count = 0usize;
        for l in lines {
            if plane.contains_line(l)? {
                count += 1;
            }
        }
        plane_counts.push((count, plane.clone()));
        if count > plane_richness {
            plane_richness = count;
            plane_witness = Some(plane.clone());
        }
    }

    // quadric richness lower bound. Per-line 3x10 restriction tables make
    // membership tests cheap.
    let monos2 = monomials_of_degree(4, 2);
    let mut tables: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(m);
    for l in lines {
        tables.push(line_condition_rows(&field, &monos2, 2, l)?);
    }
    let count_on_quadric = |poly: &HomogPoly| -> usize {
        let coeffs: Vec<Scalar> = monos2
            .iter()
            .map(|mo| poly.terms().get(mo).cloned().unwrap_or_else(|| field.zero()))
            .collect();
        let mut cnt = 0usize;
        'line: for table in &tables {
            for row in table {
                let mut acc = field.zero();
                for (a, b) in row.iter().zip(coeffs.iter()) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = field.add(&acc, &field.mul(a, b));
                    }
                }
                if !acc.is_zero() {
                    continue 'line;
                }
            }
            cnt += 1;
        }
        cnt
    };

    let mut quadric_richness_lower = 0usize;
    let mut quadric_witness: Option<Surface> = None;
    let mut seen: BTreeSet<HomogPoly> = BTreeSet::new();
    let consider = |surf: Surface,
                        seen: &mut BTreeSet<HomogPoly>,
                        best: &mut usize,
                        witness: &mut Option<Surface>| {
        if !seen.insert(surf.poly().clone()) {
            return;
        }
        let cnt = count_on_quadric(surf.poly());
        if cnt > *best {
            *best = cnt;
            *witness = Some(surf);
        }
    };

    // smooth quadrics via pairwise-skew triples
    for i in 0..m {
        for j in (i + 1)..m {
            if !skew[i][j] {
                continue;
            }
            for k in (j + 1)..m {
                if !skew[i][k] || !skew[j][k] {
                    continue;
                }
                for surf in
                    quadrics_through_lines(&field, &[&lines[i], &lines[j], &lines[k]])?
                {
                    consider(
                        surf,
                        &mut seen,
                        &mut quadric_richness_lower,
                        &mut quadric_witness,
                    );
                }
            }
        }
    }
    // cones: quadrics through full concurrent bundles at rich points
    for p in &meet_points {
        let through: Vec<&ProjLine> = lines.iter().filter(|l| l.contains(p)).collect();
        if through.len() >= 3 {
            for surf in quadrics_through_lines(&field, &through)? {
                consider(
                    surf,
                    &mut seen,
                    &mut quadric_richness_lower,
                    &mut quadric_witness,
                );
            }
        }
    }
    // plane pairs from the two richest planes
    plane_counts.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    if plane_counts.len() >= 2 {
        let prod = plane_counts[0].1.poly().mul(plane_counts[1].1.poly());
        consider(
            Surface::new(prod)?,
            &mut seen,
            &mut quadric_richness_lower,
            &mut quadric_witness,
        );
    }

    Ok(IncidenceReport {
        m,
        n,
        i_lp,
        i_circ,
        covered_points: covered,
        i_l,
        pair_count,
        hist_intersections,
        hist_points,
        plane_richness,
        plane_witness,
        quadric_richness_lower,
        quadric_witness,
        field_spec: field.spec_string(),
    })
}
