//! Canonical projective points, lines and surfaces in P^3 with exact
//! incidence predicates.
//!
//! Points are stored with the first nonzero coordinate normalized to 1.
//! Lines are stored as the reduced row echelon form of a 2x4 spanning
//! matrix, which is a unique representative per line; the six Plucker
//! coordinates are derived data kept for hashing and the skew test.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{rank_and_nullspace, BinaryForm, Field, HomogPoly, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    field: Field,
    coords: [Scalar; 4],
}

impl ProjPoint {
    /// Canonicalize homogeneous coordinates; errors when all are zero.
    pub fn new(field: &Field, coords: [Scalar; 4]) -> Result<ProjPoint> {
        for c in &coords {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let lead = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Degenerate("all coordinates are zero".into()))?;
        let inv = field.inv(&coords[lead])?;
        let canon: Vec<Scalar> = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(ProjPoint {
            field: field.clone(),
            coords: canon.try_into().unwrap(),
        })
    }

    pub fn from_ints(field: &Field, coords: [i64; 4]) -> Result<ProjPoint> {
        ProjPoint::new(
            field,
            [
                field.from_int(coords[0]),
                field.from_int(coords[1]),
                field.from_int(coords[2]),
                field.from_int(coords[3]),
            ],
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    /// Text form "[a:b:c:d]" on canonical coordinates.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_text()).collect();
        format!("[{}]", parts.join(":"))
    }

    pub fn parse(field: &Field, text: &str) -> Result<ProjPoint> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("bad point `{text}`")))?;
        // extension scalars contain commas inside brackets; split on ':'
        // at bracket depth zero
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for ch in inner.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    cur.push(ch);
                }
                ']' => {
                    depth -= 1;
                    cur.push(ch);
                }
                ':' if depth == 0 => {
                    parts.push(cur.clone());
                    cur.clear();
                }
                _ => cur.push(ch),
            }
        }
        parts.push(cur);
        if parts.len() != 4 {
            return Err(Error::parse(format!("bad point `{text}`")));
        }
        let coords: Result<Vec<Scalar>> =
            parts.iter().map(|p| Scalar::parse(field, p)).collect();
        let coords = coords?;
        ProjPoint::new(field, coords.try_into().unwrap())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine {
    field: Field,
    /// RREF rows spanning the line; the unique representative.
    span: [[Scalar; 4]; 2],
    /// p01, p02, p03, p12, p13, p23 of the spanning rows.
    plucker: [Scalar; 6],
}

impl ProjLine {
    pub fn from_span(field: &Field, a: &[Scalar; 4], b: &[Scalar; 4]) -> Result<ProjLine> {
        let rows = vec![a.to_vec(), b.to_vec()];
        let mut m = Matrix::from_rows(field.clone(), rows)?;
        let pivots = m.rref();
        if pivots.len() != 2 {
            return Err(Error::CoincidentPoints);
        }
        let r0: [Scalar; 4] = m.row(0).to_vec().try_into().unwrap();
        let r1: [Scalar; 4] = m.row(1).to_vec().try_into().unwrap();
        let plucker = plucker_of(field, &r0, &r1);
        Ok(ProjLine {
            field: field.clone(),
            span: [r0, r1],
            plucker,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The canonical spanning rows (P, Q); every symbolic restriction uses
    /// exactly this pair so outputs are reproducible.
    pub fn span(&self) -> (&[Scalar; 4], &[Scalar; 4]) {
        (&self.span[0], &self.span[1])
    }

    pub fn plucker(&self) -> &[Scalar; 6] {
        &self.plucker
    }

    /// Canonical spanning points.
    pub fn points_pair(&self) -> (ProjPoint, ProjPoint) {
        (
            ProjPoint::new(&self.field, self.span[0].clone()).unwrap(),
            ProjPoint::new(&self.field, self.span[1].clone()).unwrap(),
        )
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        // rank of span + p stays 2
        let rows = vec![
            self.span[0].to_vec(),
            self.span[1].to_vec(),
            p.coords().to_vec(),
        ];
        let m = Matrix::from_rows(self.field.clone(), rows).unwrap();
        m.rank() == 2
    }

    /// The point s*P + t*Q for a parameter (s:t).
    pub fn point_at(&self, s: &Scalar, t: &Scalar) -> Result<ProjPoint> {
        let f = &self.field;
        let coords: Vec<Scalar> = (0..4)
            .map(|i| {
                f.add(
                    &f.mul(s, &self.span[0][i]),
                    &f.mul(t, &self.span[1][i]),
                )
            })
            .collect();
        ProjPoint::new(f, coords.try_into().unwrap())
    }

    /// All q+1 points on the line over a finite field, deterministic order.
    pub fn points_finite(&self) -> Result<Vec<ProjPoint>> {
        let f = &self.field;
        if !f.is_finite() {
            return Err(Error::InfiniteField);
        }
        let one = f.one();
        let mut out = Vec::new();
        for t in f.elements()? {
            out.push(self.point_at(&one, &t)?);
        }
        out.push(self.point_at(&f.zero(), &one)?);
        Ok(out)
    }

    /// Text form: the two canonical spanning points.
    pub fn to_text(&self) -> String {
        let (p, q) = self.points_pair();
        format!("{} {}", p.to_text(), q.to_text())
    }

    pub fn parse(field: &Field, text: &str) -> Result<ProjLine> {
        let t = text.trim();
        let mid = t
            .find("] [")
            .ok_or_else(|| Error::parse(format!("bad line `{text}`")))?;
        let (a, b) = t.split_at(mid + 1);
        let p = ProjPoint::parse(field, a.trim())?;
        let q = ProjPoint::parse(field, b.trim())?;
        line_through(&p, &q)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn plucker_of(field: &Field, u: &[Scalar; 4], v: &[Scalar; 4]) -> [Scalar; 6] {
    let minor = |i: usize, j: usize| {
        field.sub(
            &field.mul(&u[i], &v[j]),
            &field.mul(&u[j], &v[i]),
        )
    };
    [
        minor(0, 1),
        minor(0, 2),
        minor(0, 3),
        minor(1, 2),
        minor(1, 3),
        minor(2, 3),
    ]
}

/// The canonical line through two distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    ProjLine::from_span(p.field(), p.coords(), q.coords())
}

/// Mutual position of two lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinesRelation {
    Equal,
    Meet {
        at: ProjPoint,
        coplanar_in: Surface,
    },
    Skew,
}

/// Classify two lines by the rank of the stacked 4x4 spanning matrix:
/// 2 = equal, 3 = meet (with the unique meet point and spanned plane),
/// 4 = skew.
pub fn lines_relation(l1: &ProjLine, l2: &ProjLine) -> Result<LinesRelation> {
    if l1.field() != l2.field() {
        return Err(Error::FieldMismatch);
    }
    let f = l1.field().clone();
    let stacked = Matrix::from_rows(
        f.clone(),
        vec![
            l1.span[0].to_vec(),
            l1.span[1].to_vec(),
            l2.span[0].to_vec(),
            l2.span[1].to_vec(),
        ],
    )?;
    let rank = stacked.rank();
    match rank {
        2 => Ok(LinesRelation::Equal),
        4 => Ok(LinesRelation::Skew),
        3 => {
            // intersection point: a^T A = b^T B from the nullspace of
            // [A^T | -B^T]  (columns indexed by a0,a1,b0,b1)
            let mut rows = Vec::with_capacity(4);
            for i in 0..4 {
                rows.push(vec![
                    l1.span[0][i].clone(),
                    l1.span[1][i].clone(),
                    f.neg(&l2.span[0][i]),
                    f.neg(&l2.span[1][i]),
                ]);
            }
            let m = Matrix::from_rows(f.clone(), rows)?;
            let (_, ns) = rank_and_nullspace(&m);
            debug_assert_eq!(ns.len(), 1);
            let v = &ns[0];
            let coords: Vec<Scalar> = (0..4)
                .map(|i| {
                    f.add(
                        &f.mul(&v[0], &l1.span[0][i]),
                        &f.mul(&v[1], &l1.span[1][i]),
                    )
                })
                .collect();
            let at = ProjPoint::new(&f, coords.try_into().unwrap())?;
            // spanned plane: nullspace of the stacked matrix gives the
            // normal vector of the unique plane through both lines
            let (_, normal) = rank_and_nullspace(&stacked);
            debug_assert_eq!(normal.len(), 1);
            let mut plane = HomogPoly::zero(&f, 4, 1);
            for (i, c) in normal[0].iter().enumerate() {
                let mut m: crate::exactalg::Mono = [0; 4];
                m[i] = 1;
                plane.add_term(&m, c);
            }
            let coplanar_in = Surface::new(plane)?;
            Ok(LinesRelation::Meet { at, coplanar_in })
        }
        _ => unreachable!("stacked rank of two lines is 2, 3 or 4"),
    }
}

/// A surface of degree >= 1, stored canonically (coefficient of the
/// graded-lex-least monomial present is 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surface {
    poly: HomogPoly,
}

impl Surface {
    pub fn new(poly: HomogPoly) -> Result<Surface> {
        if poly.is_zero() {
            return Err(Error::Degenerate("zero polynomial is not a surface".into()));
        }
        if poly.degree() < 1 {
            return Err(Error::Degenerate("surface degree must be >= 1".into()));
        }
        if poly.nvars() != 4 {
            return Err(Error::Degenerate("surfaces live in P^3".into()));
        }
        Ok(Surface {
            poly: poly.canonicalized(),
        })
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &HomogPoly {
        &self.poly
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.poly.evaluate(p.coords()).is_zero()
    }

    /// Symbolic containment of a line: the restricted binary form must be
    /// identically zero; valid over any field, including small ones.
    pub fn contains_line(&self, l: &ProjLine) -> Result<bool> {
        if l.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let (p, q) = l.span();
        Ok(self.poly.restrict_to_pair(p, q)?.is_zero())
    }

    pub fn restrict_to_line(&self, l: &ProjLine) -> Result<BinaryForm> {
        if l.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let (p, q) = l.span();
        self.poly.restrict_to_pair(p, q)
    }

    pub fn to_text(&self) -> String {
        self.poly.to_text()
    }

    pub fn parse(field: &Field, text: &str) -> Result<Surface> {
        Surface::new(HomogPoly::parse(field, 4, text)?)
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Field-rational intersection points of a line with a surface not
/// containing it, with multiplicities. Exhaustive scan over finite fields,
/// rational-root extraction over Q; total multiplicity <= deg S.
pub fn line_surface_points(
    l: &ProjLine,
    s: &Surface,
) -> Result<Vec<(ProjPoint, usize)>> {
    if l.field() != s.field() {
        return Err(Error::FieldMismatch);
    }
    let form = s.restrict_to_line(l)?;
    if form.is_zero() {
        return Err(Error::LineOnSurface);
    }
    let roots = if l.field().is_finite() {
        form.roots_finite()?
    } else {
        form.roots_rational()?
    };
    let mut out: Vec<(ProjPoint, usize)> = Vec::new();
    for ((a, b), mult) in roots {
        out.push((l.point_at(&a, &b)?, mult));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// All points of P^3 over a finite field: q^3 + q^2 + q + 1 canonical
/// representatives in lexicographic order on the leading-one position and
/// the free coordinates.
pub fn enumerate_points(field: &Field) -> Result<Vec<ProjPoint>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let elems = field.elements()?;
    let one = field.one();
    let zero = field.zero();
    let mut out = Vec::new();
    for lead in 0..4usize {
        let free = 3 - lead;
        let mut idx = vec![0usize; free];
        loop {
            let mut coords = vec![zero.clone(); 4];
            coords[lead] = one.clone();
            for (k, &i) in idx.iter().enumerate() {
                coords[lead + 1 + k] = elems[i].clone();
            }
            out.push(ProjPoint::new(field, coords.try_into().unwrap())?);
            // odometer
            let mut pos = free;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if free == 0 || pos == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

/// All lines of P^3 over a finite field: (q^2+1)(q^2+q+1) canonical RREF
/// spanning matrices enumerated by pivot-column pair, then free entries in
/// element order. Duplicate-free by construction.
pub fn enumerate_lines_of_space(field: &Field) -> Result<Vec<ProjLine>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let elems = field.elements()?;
    let one = field.one();
    let zero = field.zero();
    let mut out = Vec::new();
    // pivot pairs (i, j), i < j: free positions are the non-pivot columns
    // after each pivot
    for i in 0..4usize {
        for j in (i + 1)..4usize {
            // free columns for row0: k > i, k != j ; for row1: k > j
            let free0: Vec<usize> = ((i + 1)..4).filter(|&k| k != j).collect();
            let free1: Vec<usize> = ((j + 1)..4).collect();
            let nfree = free0.len() + free1.len();
            let mut idx = vec![0usize; nfree];
            loop {
                let mut r0 = vec![zero.clone(); 4];
                let mut r1 = vec![zero.clone(); 4];
                r0[i] = one.clone();
                r1[j] = one.clone();
                for (k, &col) in free0.iter().enumerate() {
                    r0[col] = elems[idx[k]].clone();
                }
                for (k, &col) in free1.iter().enumerate() {
                    r1[col] = elems[idx[free0.len() + k]].clone();
                }
                let line = ProjLine::from_span(
                    field,
                    &r0.clone().try_into().unwrap(),
                    &r1.clone().try_into().unwrap(),
                )?;
                debug_assert_eq!(line.span[0].to_vec(), r0);
                debug_assert_eq!(line.span[1].to_vec(), r1);
                out.push(line);
                // odometer
                let mut pos = nfree;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        break;
                    }
                    idx[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if nfree == 0 || pos == usize::MAX {
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn line_through_axis_points() {
        let f = q();
        let p = ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap();
        let qq = ProjPoint::from_ints(&f, [0, 1, 0, 0]).unwrap();
        let l = line_through(&p, &qq).unwrap();
        let pl = l.plucker();
        assert!(pl[0].is_one());
        for c in &pl[1..] {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn line_through_is_order_independent() {
        let f = q();
        let p = ProjPoint::from_ints(&f, [1, 1, 1, 1]).unwrap();
        let qq = ProjPoint::from_ints(&f, [1, 2, 3, 4]).unwrap();
        let l1 = line_through(&p, &qq).unwrap();
        let l2 = line_through(&qq, &p).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn line_through_coincident_errors() {
        let f = q();
        let p = ProjPoint::from_ints(&f, [1, 1, 1, 1]).unwrap();
        let p2 = ProjPoint::from_ints(&f, [2, 2, 2, 2]).unwrap();
        assert_eq!(line_through(&p, &p2), Err(Error::CoincidentPoints));
    }

    #[test]
    fn canonicalization_from_any_spanning_pair() {
        // two different spanning pairs of the same line give the same value
        let f = q();
        let a = ProjPoint::from_ints(&f, [1, 2, 3, 4]).unwrap();
        let b = ProjPoint::from_ints(&f, [0, 1, 1, 2]).unwrap();
        let l = line_through(&a, &b).unwrap();
        // c = a + 2b, d = 3a - b are on the same line
        let c = ProjPoint::from_ints(&f, [1, 4, 5, 8]).unwrap();
        let d = ProjPoint::from_ints(&f, [3, 5, 8, 10]).unwrap();
        let l2 = line_through(&c, &d).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn plucker_relation_holds() {
        let f = Field::parse("F5").unwrap();
        let mut state = 7u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state
        };
        for _ in 0..50 {
            let a = ProjPoint::new(
                &f,
                [
                    f.from_int((next() % 5) as i64),
                    f.from_int((next() % 5) as i64),
                    f.from_int((next() % 5) as i64),
                    f.one(),
                ],
            )
            .unwrap();
            let b = ProjPoint::new(
                &f,
                [
                    f.one(),
                    f.from_int((next() % 5) as i64),
                    f.from_int((next() % 5) as i64),
                    f.from_int((next() % 5) as i64),
                ],
            )
            .unwrap();
            if a == b {
                continue;
            }
            let l = line_through(&a, &b).unwrap();
            let p = l.plucker();
            // p01 p23 - p02 p13 + p03 p12 = 0
            let rel = f.add(
                &f.sub(&f.mul(&p[0], &p[5]), &f.mul(&p[1], &p[4])),
                &f.mul(&p[2], &p[3]),
            );
            assert!(rel.is_zero());
        }
    }

    #[test]
    fn relations_meet_skew_equal() {
        let f = q();
        let xaxis = line_through(
            &ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap(),
            &ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap(),
        )
        .unwrap();
        let yaxis = line_through(
            &ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 1, 0, 0]).unwrap(),
        )
        .unwrap();
        match lines_relation(&xaxis, &yaxis).unwrap() {
            LinesRelation::Meet { at, coplanar_in } => {
                assert_eq!(at, ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap());
                // the spanned plane contains both lines
                assert!(coplanar_in.contains_line(&xaxis).unwrap());
                assert!(coplanar_in.contains_line(&yaxis).unwrap());
            }
            other => panic!("expected meet, got {other:?}"),
        }
        let l1 = line_through(
            &ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 1, 0, 0]).unwrap(),
        )
        .unwrap();
        let l2 = line_through(
            &ProjPoint::from_ints(&f, [0, 0, 1, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(lines_relation(&l1, &l2).unwrap(), LinesRelation::Skew);
        assert_eq!(lines_relation(&l1, &l1).unwrap(), LinesRelation::Equal);
    }

    #[test]
    fn relations_are_symmetric() {
        let f = Field::parse("F3").unwrap();
        let lines = enumerate_lines_of_space(&f).unwrap();
        let mut state = 99u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state
        };
        for _ in 0..60 {
            let a = &lines[(next() % lines.len() as u64) as usize];
            let b = &lines[(next() % lines.len() as u64) as usize];
            let ab = lines_relation(a, b).unwrap();
            let ba = lines_relation(b, a).unwrap();
            match (&ab, &ba) {
                (
                    LinesRelation::Meet { at: p1, .. },
                    LinesRelation::Meet { at: p2, .. },
                ) => assert_eq!(p1, p2),
                _ => assert_eq!(ab, ba),
            }
        }
    }

    #[test]
    fn on_surface_examples() {
        let f = q();
        let quadric = Surface::parse(
            &f,
            "1*x0^1 x1^0 x2^0 x3^1 + -1*x0^0 x1^1 x2^1 x3^0",
        )
        .unwrap();
        let ruling = line_through(
            &ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 1, 0, 0]).unwrap(),
        )
        .unwrap();
        assert!(quadric.contains_line(&ruling).unwrap());
        let secant = line_through(
            &ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap(),
        )
        .unwrap();
        assert!(!quadric.contains_line(&secant).unwrap());
        let pts = line_surface_points(&secant, &quadric).unwrap();
        assert_eq!(pts.len(), 2);
        let expected: Vec<ProjPoint> = vec![
            ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap(),
            ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap(),
        ];
        let got: Vec<ProjPoint> = pts.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(got, expected);
        assert!(pts.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn tangent_line_has_multiplicity_two() {
        let f = q();
        let quadric = Surface::parse(
            &f,
            "1*x0^1 x1^0 x2^0 x3^1 + -1*x0^0 x1^1 x2^1 x3^0",
        )
        .unwrap();
        // tangent plane at (1,0,0,0) is x3 = 0; a line through the point in
        // that plane, not on the quadric
        let tangent = line_through(
            &ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 1, 1, 0]).unwrap(),
        )
        .unwrap();
        let pts = line_surface_points(&tangent, &quadric).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].0, ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap());
        assert_eq!(pts[0].1, 2);
    }

    #[test]
    fn line_in_plane_errors_in_line_surface_points() {
        let f = q();
        let plane = Surface::parse(&f, "1*x0^1 x1^0 x2^0 x3^0").unwrap();
        let l = line_through(
            &ProjPoint::from_ints(&f, [0, 1, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 0, 1, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(line_surface_points(&l, &plane), Err(Error::LineOnSurface));
    }

    #[test]
    fn generic_line_meets_plane_once() {
        let f = q();
        let plane = Surface::parse(&f, "1*x0^1 x1^0 x2^0 x3^0").unwrap();
        let l = line_through(
            &ProjPoint::from_ints(&f, [1, 1, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [1, 0, 1, 2]).unwrap(),
        )
        .unwrap();
        let pts = line_surface_points(&l, &plane).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].1, 1);
    }

    #[test]
    fn enumeration_counts_q2_q3() {
        for (spec, npts, nlines) in [("F2", 15usize, 35usize), ("F3", 40, 130)] {
            let f = Field::parse(spec).unwrap();
            let pts = enumerate_points(&f).unwrap();
            let lines = enumerate_lines_of_space(&f).unwrap();
            assert_eq!(pts.len(), npts);
            assert_eq!(lines.len(), nlines);
            // duplicate-free
            let set: std::collections::BTreeSet<_> = pts.iter().collect();
            assert_eq!(set.len(), npts);
            let lset: std::collections::BTreeSet<_> = lines.iter().collect();
            assert_eq!(lset.len(), nlines);
        }
    }

    #[test]
    fn incidence_regularity_small_fields() {
        // each line has q+1 points, each point lies on q^2+q+1 lines
        for spec in ["F2", "F3"] {
            let f = Field::parse(spec).unwrap();
            let qcard = f.cardinality().unwrap() as usize;
            let pts = enumerate_points(&f).unwrap();
            let lines = enumerate_lines_of_space(&f).unwrap();
            for l in &lines {
                let on = pts.iter().filter(|p| l.contains(p)).count();
                assert_eq!(on, qcard + 1);
            }
            for p in &pts {
                let through = lines.iter().filter(|l| l.contains(p)).count();
                assert_eq!(through, qcard * qcard + qcard + 1);
            }
        }
    }

    #[test]
    fn point_and_line_text_roundtrip() {
        let f = Field::parse("F2^2").unwrap();
        let pts = enumerate_points(&f).unwrap();
        for p in pts.iter().take(12) {
            let t = p.to_text();
            assert_eq!(ProjPoint::parse(&f, &t).unwrap(), *p);
        }
        let lines = enumerate_lines_of_space(&f).unwrap();
        for l in lines.iter().take(12) {
            let t = l.to_text();
            assert_eq!(ProjLine::parse(&f, &t).unwrap(), *l);
        }
        let fq = q();
        let p = ProjPoint::from_ints(&fq, [2, -4, 0, 6]).unwrap();
        assert_eq!(ProjPoint::parse(&fq, &p.to_text()).unwrap(), p);
    }

    #[test]
    fn surface_text_roundtrip() {
        let f = q();
        let s = Surface::parse(
            &f,
            "3/2*x0^2 x1^0 x2^0 x3^0 + -1*x0^0 x1^1 x2^1 x3^0",
        )
        .unwrap();
        let t = s.to_text();
        assert_eq!(Surface::parse(&f, &t).unwrap(), s);
    }
}
