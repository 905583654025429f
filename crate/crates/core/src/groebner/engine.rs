//! Buchberger's algorithm: normal selection strategy, Gebauer–Möller pair
//! criteria, factor stripping after every reduction.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use super::ipoly::{coprime, degree, divides, lcm, mask_of, IPoly, Reducer, Timeout};
use super::{CapKind, CapReport, GbConfig, GbError, GbStats, StripSet};
use crate::poly::{Exponents, MPoly, MonomialOrder};

struct Entry {
    poly: IPoly,
    lm: Exponents,
    mask: u64,
}

/// (lcm degree, lcm, i, j): the BTreeSet order is the selection order.
type PairKey = (u32, Exponents, usize, usize);

pub(crate) struct Outcome {
    pub basis: Vec<IPoly>,
    pub stats: GbStats,
}

struct Engine<'a> {
    entries: Vec<Entry>,
    active: Vec<usize>,
    pairs: BTreeSet<PairKey>,
    strip: Vec<(usize, usize)>,
    cfg: &'a GbConfig,
    start: Instant,
    deadline: Option<Instant>,
    last_beat: Instant,
    stats: GbStats,
    ord: &'a MonomialOrder,
}

enum Added {
    Zero,
    Unit,
    Poly(IPoly),
}

impl<'a> Engine<'a> {
    fn find<'s>(&'s self) -> impl Fn(&[u16], u64) -> Option<Reducer<'s>> + 's {
        move |t: &[u16], tmask: u64| {
            self.active.iter().find_map(|&k| {
                let e = &self.entries[k];
                (e.mask & !tmask == 0 && divides(&e.lm, t)).then_some(Reducer {
                    lm: &e.lm,
                    poly: &e.poly,
                })
            })
        }
    }

    fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }

    fn cap(&self, kind: CapKind) -> GbError {
        GbError::CapExceeded(Box::new(CapReport {
            kind,
            pairs_processed: self.stats.pairs_processed,
            basis_size: self.active.len(),
            queue_len: self.pairs.len(),
            elapsed_ms: self.elapsed_ms(),
            partial: self
                .active
                .iter()
                .map(|&k| self.entries[k].poly.to_mpoly(self.ord))
                .collect(),
        }))
    }

    /// Reduce, strip, repeat until stable.
    fn process(&mut self, mut h: IPoly) -> Result<Added, GbError> {
        loop {
            if h.is_zero() {
                return Ok(Added::Zero);
            }
            let (r, _) = h
                .reduce(self.find(), true, self.deadline)
                .map_err(|Timeout| self.cap(CapKind::Time))?;
            h = r;
            if h.is_zero() {
                return Ok(Added::Zero);
            }
            if h.is_constant() {
                return Ok(Added::Unit);
            }
            h.make_primitive();
            let (s, changed) = strip_all(h, &self.strip);
            h = s;
            self.stats.strips += changed;
            if changed == 0 {
                h.make_primitive();
                return Ok(Added::Poly(h));
            }
            if h.is_constant() {
                return Ok(Added::Unit);
            }
        }
    }

    fn insert(&mut self, h: IPoly) -> Result<(), GbError> {
        if let Some(maxd) = self.cfg.max_degree {
            if h.total_degree() > maxd {
                return Err(self.cap(CapKind::Degree));
            }
        }
        let lm = h.lm().clone();
        let mask = mask_of(&lm);
        let hi = self.entries.len();
        self.entries.push(Entry { poly: h, lm, mask });
        self.update(hi);
        Ok(())
    }

    /// Gebauer–Möller update for the new element `hi`.
    fn update(&mut self, hi: usize) {
        let hl = self.entries[hi].lm.clone();
        let mut c: Vec<(usize, Exponents)> = self
            .active
            .iter()
            .map(|&g| (g, lcm(&hl, &self.entries[g].lm)))
            .collect();
        let mut d: Vec<(usize, Exponents)> = Vec::new();
        while !c.is_empty() {
            let (g1, l1) = c.remove(0);
            let keep = coprime(&hl, &self.entries[g1].lm)
                || (!c.iter().any(|(_, l2)| divides(l2, &l1))
                    && !d.iter().any(|(_, l2)| divides(l2, &l1)));
            if keep {
                d.push((g1, l1));
            }
        }
        let entries = &self.entries;
        let before = self.pairs.len();
        self.pairs.retain(|(_, l, i, j)| {
            !divides(&hl, l)
                || lcm(&entries[*i].lm, &hl) == *l
                || lcm(&entries[*j].lm, &hl) == *l
        });
        self.stats.pairs_pruned += (before - self.pairs.len()) as u64;
        for (g, l) in d {
            if coprime(&hl, &self.entries[g].lm) {
                self.stats.pairs_pruned += 1;
                continue;
            }
            self.pairs.insert((degree(&l), l, g.min(hi), g.max(hi)));
        }
        self.active.retain(|&g| !divides(&hl, &entries[g].lm));
        self.active.push(hi);
    }

    fn heartbeat(&mut self) {
        let secs = self.cfg.heartbeat_secs;
        if secs > 0.0 && self.last_beat.elapsed() >= Duration::from_secs_f64(secs) {
            self.last_beat = Instant::now();
            log::info!(
                "groebner: {} pairs processed, {} queued, basis {} ({} ms)",
                self.stats.pairs_processed,
                self.pairs.len(),
                self.active.len(),
                self.elapsed_ms()
            );
        }
    }

    fn run(&mut self, gens: Vec<IPoly>) -> Result<Option<()>, GbError> {
        for g in gens {
            match self.process(g)? {
                Added::Zero => {}
                Added::Unit => return Ok(None),
                Added::Poly(h) => self.insert(h)?,
            }
        }
        while let Some((_, _, i, j)) = self.pairs.pop_first() {
            if let Some(maxp) = self.cfg.max_pairs {
                if self.stats.pairs_processed >= maxp {
                    return Err(self.cap(CapKind::Pairs));
                }
            }
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(self.cap(CapKind::Time));
                }
            }
            self.stats.pairs_processed += 1;
            self.heartbeat();
            let s = IPoly::spoly(&self.entries[i].poly, &self.entries[j].poly);
            match self.process(s)? {
                Added::Zero => self.stats.zero_reductions += 1,
                Added::Unit => return Ok(None),
                Added::Poly(h) => self.insert(h)?,
            }
        }
        Ok(Some(()))
    }

    /// Tail-reduces the (already minimal) active set.
    fn interreduce(&self) -> Result<Vec<IPoly>, GbError> {
        let mut out = Vec::with_capacity(self.active.len());
        for &k in &self.active {
            let find = |t: &[u16], tmask: u64| {
                self.active.iter().filter(|&&o| o != k).find_map(|&o| {
                    let e = &self.entries[o];
                    (e.mask & !tmask == 0 && divides(&e.lm, t)).then_some(Reducer {
                        lm: &e.lm,
                        poly: &e.poly,
                    })
                })
            };
            let (mut r, _) = self.entries[k]
                .poly
                .clone()
                .reduce(find, true, self.deadline)
                .map_err(|Timeout| self.cap(CapKind::Time))?;
            r.make_primitive();
            out.push(r);
        }
        out.sort_by(|a, b| a.lm().cmp(b.lm()));
        Ok(out)
    }
}

/// Removes every strip factor, repeatedly. Returns the count removed.
pub(crate) fn strip_all(mut h: IPoly, strip: &[(usize, usize)]) -> (IPoly, u64) {
    let mut count = 0;
    loop {
        let mut changed = false;
        for &(pi, pj) in strip {
            while let Some(q) = h.divide_by_difference(pi, pj) {
                h = q;
                count += 1;
                changed = true;
            }
        }
        if !changed {
            return (h, count);
        }
    }
}

pub(crate) fn run(
    gens: &[MPoly],
    ord: &MonomialOrder,
    strip: &StripSet,
    cfg: &GbConfig,
) -> Result<Outcome, GbError> {
    let start = Instant::now();
    let deadline = cfg
        .max_seconds
        .map(|s| start + Duration::from_secs_f64(s.max(0.0)));
    let strip_pos: Vec<(usize, usize)> = strip
        .pairs()
        .iter()
        .map(|&(i, j)| (ord.rank(i), ord.rank(j)))
        .collect();
    let mut input: Vec<IPoly> = gens
        .iter()
        .map(|g| IPoly::from_mpoly(g, ord).0)
        .filter(|g| !g.is_zero())
        .collect();
    let mut stats = GbStats::default();
    // Interreduction can expose new strip factors; feed them back in.
    for round in 0.. {
        let mut eng = Engine {
            entries: Vec::new(),
            active: Vec::new(),
            pairs: BTreeSet::new(),
            strip: strip_pos.clone(),
            cfg,
            start,
            deadline,
            last_beat: Instant::now(),
            stats: stats.clone(),
            ord,
        };
        let done = eng.run(std::mem::take(&mut input))?;
        stats = eng.stats.clone();
        stats.rounds = round + 1;
        if done.is_none() {
            let mut one = IPoly::zero();
            one.terms.push((Exponents::from_elem(0, ord.priority().len()), 1.into()));
            stats.elapsed_ms = eng.elapsed_ms();
            return Ok(Outcome {
                basis: vec![one],
                stats,
            });
        }
        let reduced = eng.interreduce()?;
        let mut again = false;
        for r in reduced.iter() {
            let (s, n) = strip_all(r.clone(), &strip_pos);
            if n > 0 {
                again = true;
                stats.strips += n;
            }
            let mut s = s;
            s.make_primitive();
            input.push(s);
        }
        if !again {
            stats.elapsed_ms = eng.elapsed_ms();
            return Ok(Outcome {
                basis: reduced,
                stats,
            });
        }
    }
    unreachable!()
}
