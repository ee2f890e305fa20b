use super::{Circle, CircleKind, Handlebody, Presentation, PresentationError};

/// The extra circle added when a gluing closes a loop inside one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MendCircle {
    None,
    /// An unlinked 0-framed unknot (an S¹×S² summand).
    Isolated,
    /// A 0-framed meridian of the first fused circle.
    Meridian,
}

/// How matched longitudes are fused when two handlebodies are glued.
///
/// Each pair of matched longitudes ℓ, ℓ' becomes one surgery circle
/// representing ℓ + ℓ': rows of the linking matrix are added and the framing
/// is fr(ℓ) + fr(ℓ') + 2·lk(ℓ, ℓ') + `framing_offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FusionRule {
    pub framing_offset: i64,
    pub mend_circle: MendCircle,
}

impl Default for FusionRule {
    fn default() -> Self {
        FusionRule {
            framing_offset: 0,
            mend_circle: MendCircle::Isolated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    BlowUp(i64),
    BlowDown(String),
    Slide { target: String, over: String, sign: i64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveScript {
    pub moves: Vec<Move>,
}

impl MoveScript {
    /// Applies the moves in order. Circles created by `BlowUp` are named
    /// `E1`, `E2`, ... (first free name) and may be referenced afterwards.
    pub fn apply(&self, p: &Presentation) -> Result<Presentation, PresentationError> {
        let mut cur = p.clone();
        for m in &self.moves {
            cur = match m {
                Move::BlowUp(sign) => cur.blow_up(*sign)?,
                Move::BlowDown(name) => {
                    let i = cur
                        .circle_index(name)
                        .ok_or_else(|| PresentationError::UnknownCircle(name.clone()))?;
                    cur.blow_down(i)?
                }
                Move::Slide { target, over, sign } => {
                    let x = cur
                        .circle_index(target)
                        .ok_or_else(|| PresentationError::UnknownCircle(target.clone()))?;
                    let j = cur
                        .circle_index(over)
                        .ok_or_else(|| PresentationError::UnknownCircle(over.clone()))?;
                    cur.slide(x, j, *sign)?
                }
            };
        }
        Ok(cur)
    }

    /// Net signature change: the sum of blow-up signs minus blow-down signs.
    pub fn signature_shift(&self, p: &Presentation) -> Result<i64, PresentationError> {
        let mut cur = p.clone();
        let mut shift = 0;
        for m in &self.moves {
            match m {
                Move::BlowUp(s) => shift += s,
                Move::BlowDown(name) => {
                    let i = cur
                        .circle_index(name)
                        .ok_or_else(|| PresentationError::UnknownCircle(name.clone()))?;
                    shift -= cur.framing(i);
                }
                Move::Slide { .. } => {}
            }
            cur = MoveScript { moves: vec![m.clone()] }.apply(&cur)?;
        }
        Ok(shift)
    }
}

fn check_sign(sign: i64) -> Result<(), PresentationError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(PresentationError::InvalidMove(format!(
            "sign must be +1 or -1, got {sign}"
        )))
    }
}

impl Presentation {
    /// Kirby move I: adds an isolated ±1-framed unknot (a ±CP² summand).
    pub fn blow_up(&self, sign: i64) -> Result<Presentation, PresentationError> {
        check_sign(sign)?;
        let mut p = self.clone();
        let name = p.fresh_name_series("E");
        p.add_surgery_in(&name, sign, 0)?;
        p.canonicalize();
        Ok(p)
    }

    /// Inverse of [`blow_up`](Self::blow_up).
    pub fn blow_down(&self, circle: usize) -> Result<Presentation, PresentationError> {
        let c = self
            .circles
            .get(circle)
            .ok_or(PresentationError::CircleOutOfRange(circle))?;
        if !c.is_surgery() {
            return Err(PresentationError::InvalidMove(format!(
                "`{}` is not a surgery circle",
                c.name
            )));
        }
        let fr = self.framing(circle);
        if fr != 1 && fr != -1 {
            return Err(PresentationError::InvalidMove(format!(
                "`{}` has framing {fr}, not ±1",
                c.name
            )));
        }
        if (0..self.circles.len()).any(|k| k != circle && self.lk[circle][k] != 0) {
            return Err(PresentationError::InvalidMove(format!(
                "`{}` links other circles",
                c.name
            )));
        }
        let mut p = self.clone();
        p.circles.remove(circle);
        p.lk.remove(circle);
        for row in &mut p.lk {
            row.remove(circle);
        }
        Ok(p)
    }

    /// A +1 and a −1 blow-up together; leaves the signature unchanged.
    pub fn cancelling_pair(&self) -> Presentation {
        self.blow_up(1).and_then(|p| p.blow_up(-1)).expect("signs are valid")
    }

    /// Kirby move II: slides circle `x` over surgery circle `j`, i.e.
    /// lk ← E·lk·Eᵀ where E adds `sign`·(row j) to row x.
    pub fn slide(&self, x: usize, j: usize, sign: i64) -> Result<Presentation, PresentationError> {
        check_sign(sign)?;
        let n = self.circles.len();
        if x >= n {
            return Err(PresentationError::CircleOutOfRange(x));
        }
        if j >= n {
            return Err(PresentationError::CircleOutOfRange(j));
        }
        if x == j {
            return Err(PresentationError::InvalidMove(
                "cannot slide a circle over itself".into(),
            ));
        }
        if !self.circles[j].is_surgery() {
            return Err(PresentationError::InvalidMove(format!(
                "cannot slide over longitude `{}`",
                self.circles[j].name
            )));
        }
        if self.circles[x].component != self.circles[j].component {
            return Err(PresentationError::InvalidMove("slide across components".into()));
        }
        let mut lk = self.lk.clone();
        let fr = self.lk[x][x]
            .checked_add(self.lk[j][j])
            .and_then(|v| v.checked_add(2 * sign * self.lk[x][j]))
            .ok_or(PresentationError::Overflow)?;
        for k in 0..n {
            if k == x {
                continue;
            }
            let v = self.lk[x][k]
                .checked_add(sign * self.lk[j][k])
                .ok_or(PresentationError::Overflow)?;
            lk[x][k] = v;
            lk[k][x] = v;
        }
        lk[x][x] = fr;
        Ok(Presentation { lk, ..self.clone() })
    }

    pub(crate) fn fresh_name_series(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| !self.name_taken(n))
            .unwrap()
    }

    /// Block-diagonal union; `other`'s names are suffixed on collision and
    /// its handlebodies follow this one's in the boundary order.
    pub fn disjoint_union(&self, other: &Presentation) -> Presentation {
        let mut q = other.clone();
        // rename handlebodies first so that their longitudes follow
        for h in 0..q.handlebodies.len() {
            let name = q.handlebodies[h].name.clone();
            if self.name_taken(&name) {
                let fresh = fresh_against(&name, self, &q);
                q.handlebodies[h].name = fresh.clone();
                for c in q.circles.iter_mut() {
                    if let CircleKind::Longitude { handlebody, handle } = c.kind {
                        if handlebody == h {
                            c.name = format!("{fresh}.{handle}");
                        }
                    }
                }
            }
        }
        for i in 0..q.circles.len() {
            if q.circles[i].is_surgery() && self.name_taken(&q.circles[i].name) {
                let fresh = fresh_against(&q.circles[i].name.clone(), self, &q);
                q.circles[i].name = fresh;
            }
        }

        let hb_off = self.handlebodies.len();
        let comp_off = self.components;
        let n1 = self.circles.len();
        let n2 = q.circles.len();
        let mut circles = self.circles.clone();
        circles.extend(q.circles.iter().map(|c| Circle {
            name: c.name.clone(),
            kind: match c.kind {
                CircleKind::Longitude { handlebody, handle } => CircleKind::Longitude {
                    handlebody: handlebody + hb_off,
                    handle,
                },
                CircleKind::Surgery => CircleKind::Surgery,
            },
            component: c.component + comp_off,
        }));
        let mut handlebodies = self.handlebodies.clone();
        handlebodies.extend(q.handlebodies.iter().map(|h| Handlebody {
            component: h.component + comp_off,
            ..h.clone()
        }));
        let mut lk = vec![vec![0; n1 + n2]; n1 + n2];
        for i in 0..n1 {
            lk[i][..n1].copy_from_slice(&self.lk[i]);
        }
        for i in 0..n2 {
            lk[n1 + i][n1..].copy_from_slice(&q.lk[i]);
        }
        let mut p = Presentation {
            circles,
            handlebodies,
            lk,
            components: comp_off + q.components,
        };
        p.canonicalize();
        p
    }

    /// Reorders the boundary: old handlebody `j` moves to position `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Presentation, PresentationError> {
        let m = self.handlebodies.len();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&t| t >= m || std::mem::replace(&mut seen[t], true)) {
            return Err(PresentationError::NotAPermutation(m));
        }
        let mut handlebodies = self.handlebodies.clone();
        for (j, &t) in perm.iter().enumerate() {
            handlebodies[t] = self.handlebodies[j].clone();
        }
        let circles = self
            .circles
            .iter()
            .map(|c| match c.kind {
                CircleKind::Longitude { handlebody, handle } => Circle {
                    kind: CircleKind::Longitude {
                        handlebody: perm[handlebody],
                        handle,
                    },
                    ..c.clone()
                },
                CircleKind::Surgery => c.clone(),
            })
            .collect();
        let mut p = Presentation {
            circles,
            handlebodies,
            lk: self.lk.clone(),
            components: self.components,
        };
        p.canonicalize();
        Ok(p)
    }

    /// Glues handlebody `a` to handlebody `b` (equal genus) and removes both
    /// from the boundary. Matched longitudes are fused per `rule`. If the two
    /// handlebodies lie in different components these merge; otherwise the
    /// rule's mend circle is added.
    pub fn glue(&self, a: usize, b: usize, rule: &FusionRule) -> Result<Presentation, PresentationError> {
        let m = self.handlebodies.len();
        if a >= m {
            return Err(PresentationError::HandlebodyOutOfRange(a));
        }
        if b >= m {
            return Err(PresentationError::HandlebodyOutOfRange(b));
        }
        if a == b {
            return Err(PresentationError::InvalidMove(
                "cannot glue a handlebody to itself".into(),
            ));
        }
        let (ha, hb) = (&self.handlebodies[a], &self.handlebodies[b]);
        if ha.genus != hb.genus {
            return Err(PresentationError::GenusMismatch(ha.genus, hb.genus));
        }
        let g = ha.genus;
        let (ca, cb) = (ha.component, hb.component);
        let same_component = ca == cb;
        let la: Vec<usize> = (1..=g).map(|i| self.longitude_index(a, i)).collect();
        let lb: Vec<usize> = (1..=g).map(|i| self.longitude_index(b, i)).collect();

        let keep: Vec<usize> = (0..self.circles.len())
            .filter(|i| !la.contains(i) && !lb.contains(i))
            .collect();
        let fused_row = |i: usize, k: usize| self.lk[la[i]][k] + self.lk[lb[i]][k];
        let merge = |c: usize| if c == cb { ca } else { c };
        let reindex = |h: usize| h - (h > a) as usize - (h > b) as usize;

        let mut circles: Vec<Circle> = keep
            .iter()
            .map(|&i| {
                let c = &self.circles[i];
                Circle {
                    name: c.name.clone(),
                    kind: match c.kind {
                        CircleKind::Longitude { handlebody, handle } => CircleKind::Longitude {
                            handlebody: reindex(handlebody),
                            handle,
                        },
                        CircleKind::Surgery => CircleKind::Surgery,
                    },
                    component: merge(c.component),
                }
            })
            .collect();
        let mut taken = self.clone();
        let mut fused_names = Vec::with_capacity(g);
        for i in 1..=g {
            let name = taken.fresh_name(&format!("{}_{}_{i}", ha.name, hb.name));
            taken.circles.push(Circle {
                name: name.clone(),
                kind: CircleKind::Surgery,
                component: ca,
            });
            fused_names.push(name);
        }
        for name in fused_names {
            circles.push(Circle {
                name,
                kind: CircleKind::Surgery,
                component: ca,
            });
        }

        let nk = keep.len();
        let total = nk + g;
        let mut lk = vec![vec![0i64; total]; total];
        for (r, &i) in keep.iter().enumerate() {
            for (c, &j) in keep.iter().enumerate() {
                lk[r][c] = self.lk[i][j];
            }
        }
        for i in 0..g {
            for (c, &k) in keep.iter().enumerate() {
                let v = fused_row(i, k);
                lk[nk + i][c] = v;
                lk[c][nk + i] = v;
            }
            for j in 0..g {
                // Gram entry of (ℓa_i + ℓb_i, ℓa_j + ℓb_j)
                let mut v = fused_row(i, la[j]) + fused_row(i, lb[j]);
                if i == j {
                    v += rule.framing_offset;
                }
                lk[nk + i][nk + j] = v;
            }
        }

        let handlebodies: Vec<Handlebody> = self
            .handlebodies
            .iter()
            .enumerate()
            .filter(|&(h, _)| h != a && h != b)
            .map(|(_, h)| Handlebody {
                component: merge(h.component),
                ..h.clone()
            })
            .collect();

        let mut p = Presentation {
            circles,
            handlebodies,
            lk,
            components: self.components,
        };
        if !same_component {
            // cb is now unused: shift the labels above it down
            for c in p.circles.iter_mut() {
                if c.component > cb {
                    c.component -= 1;
                }
            }
            for h in p.handlebodies.iter_mut() {
                if h.component > cb {
                    h.component -= 1;
                }
            }
            p.components -= 1;
        } else {
            let comp = ca;
            match rule.mend_circle {
                MendCircle::None => {}
                MendCircle::Isolated => {
                    let name = p.fresh_name(&format!("{}_{}_m", ha.name, hb.name));
                    p.add_surgery_in(&name, 0, comp)?;
                }
                MendCircle::Meridian => {
                    let name = p.fresh_name(&format!("{}_{}_m", ha.name, hb.name));
                    let idx = p.add_surgery_in(&name, 0, comp)?;
                    if g > 0 {
                        p.set_linking(idx, nk, 1)?;
                    }
                }
            }
        }
        p.canonicalize();
        Ok(p)
    }

    /// Sewing: glue this presentation's last handlebody to `other`'s first.
    pub fn sew(&self, other: &Presentation) -> Result<Presentation, PresentationError> {
        self.sew_with(other, &FusionRule::default())
    }

    pub fn sew_with(&self, other: &Presentation, rule: &FusionRule) -> Result<Presentation, PresentationError> {
        let m = self.handlebodies.len();
        if m == 0 {
            return Err(PresentationError::HandlebodyOutOfRange(0));
        }
        if other.handlebodies.is_empty() {
            return Err(PresentationError::HandlebodyOutOfRange(0));
        }
        let (g1, g2) = (self.handlebodies[m - 1].genus, other.handlebodies[0].genus);
        if g1 != g2 {
            return Err(PresentationError::GenusMismatch(g1, g2));
        }
        self.disjoint_union(other).glue(m - 1, m, rule)
    }

    /// Mending: glue the first two handlebodies to each other.
    pub fn mend(&self) -> Result<Presentation, PresentationError> {
        self.mend_with(&FusionRule::default())
    }

    pub fn mend_with(&self, rule: &FusionRule) -> Result<Presentation, PresentationError> {
        if self.handlebodies.len() < 2 {
            return Err(PresentationError::HandlebodyOutOfRange(1));
        }
        self.glue(0, 1, rule)
    }
}

fn fresh_against(base: &str, p: &Presentation, q: &Presentation) -> String {
    (2..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !p.name_taken(n) && !q.name_taken(n))
        .unwrap()
}

/// The cap: two genus-`g` handlebodies whose i-th handles are encircled by
/// one 0-framed surgery circle, linking the first copy +1 and the second −1.
pub fn pairing_presentation(g: usize) -> Presentation {
    let mut p = Presentation::empty();
    p.add_handlebody("H1", g).unwrap();
    p.add_handlebody("H2", g).unwrap();
    for i in 1..=g {
        let s = p.add_surgery(&format!("S{i}"), 0).unwrap();
        p.set_linking(s, p.longitude_index(0, i), 1).unwrap();
        p.set_linking(s, p.longitude_index(1, i), -1).unwrap();
    }
    p.components = 1;
    p
}
