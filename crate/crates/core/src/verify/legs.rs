//! Incremental construction of composite move words.
//!
//! A [`Leg`] tracks the current labelling, order and vertical word while
//! moves are appended, so each step can be stated in terms of the diagram
//! (an interchanger to some order, a cell component) rather than indices.

use crate::glue::{adjacent_representative, contract, glued_labelling_alt, GluedScheme, JChoice};
use crate::ids::CellName;
use crate::orders::{connect_with, face_relations, CompOrder};
use crate::terms::{apply_move, eval_order, swaps_from, Decl3, Labelling, Move, MoveWord, VertWord};

#[derive(Debug, Clone)]
pub struct Leg {
    lab: Labelling,
    order: CompOrder,
    source: VertWord,
    word: VertWord,
    moves: Vec<Move>,
}

impl Leg {
    pub fn start(lab: &Labelling, o: &CompOrder) -> Result<Leg, String> {
        let source = eval_order(lab, o).map_err(|e| e.to_string())?;
        Ok(Leg {
            lab: lab.clone(),
            order: o.clone(),
            word: source.clone(),
            source,
            moves: Vec::new(),
        })
    }

    pub fn labelling(&self) -> &Labelling {
        &self.lab
    }

    pub fn order(&self) -> &CompOrder {
        &self.order
    }

    fn push(&mut self, m: Move) -> Result<(), String> {
        self.word = apply_move(&self.lab.sig, &self.word, &m)?;
        self.moves.push(m);
        Ok(())
    }

    fn check(&self) {
        debug_assert_eq!(
            eval_order(&self.lab, &self.order).ok().as_ref(),
            Some(&self.word),
            "leg word drifted from its order"
        );
    }

    /// One generating move at `index` of the current order.
    pub fn swap(mut self, index: usize) -> Result<Leg, String> {
        let (moves, word) = swaps_from(&self.lab.sig, &self.word, &[index]).map_err(|e| e.to_string())?;
        self.moves.extend(moves);
        self.word = word;
        self.order = self.order.swapped(index);
        self.check();
        Ok(self)
    }

    /// The interchanger along the canonical path to `target`.
    pub fn gamma_to(mut self, target: &CompOrder) -> Result<Leg, String> {
        let rel = face_relations(&self.lab.scheme);
        target
            .check(&self.lab.scheme, &rel)
            .map_err(|e| format!("target order: {e}"))?;
        let path = connect_with(&rel, &self.order, target);
        let indices: Vec<usize> = path.iter().map(|m| m.index).collect();
        let (moves, word) = swaps_from(&self.lab.sig, &self.word, &indices).map_err(|e| e.to_string())?;
        self.moves.extend(moves);
        self.word = word;
        self.order = target.clone();
        self.check();
        Ok(self)
    }

    /// The interchanger to the order `choice` picks with the glued pair
    /// adjacent.
    pub fn gamma_to_adjacent(self, g: &GluedScheme, choice: JChoice) -> Result<Leg, String> {
        let rep = adjacent_representative(g, &self.order, choice).map_err(|e| e.to_string())?;
        self.gamma_to(&rep)
    }

    /// The component of a one-to-one cell; the labelling is retargeted.
    pub fn nat1(mut self, cell: &CellName) -> Result<Leg, String> {
        let Some(Decl3::OneToOne { face, .. }) = self.lab.sig.cells.get(cell) else {
            return Err(format!("`{cell}` is not a one-to-one cell"));
        };
        let pos = self
            .order
            .position(face)
            .ok_or_else(|| format!("face `{face}` is absent from [{}]", self.order))?;
        let index = self.lab.cell_index(&self.order, pos);
        self.push(Move::gen3(index, cell.clone()))?;
        self.lab = self.lab.retarget(cell).map_err(|e| e.to_string())?;
        self.check();
        Ok(self)
    }

    /// A two-to-one cell on the adjacent pair glued by `g`; afterwards the
    /// leg lives on the glued scheme.
    pub fn nat2(mut self, g: &GluedScheme, cell: &CellName) -> Result<Leg, String> {
        let pos = self
            .order
            .position(&g.origin_f)
            .filter(|&p| self.order.faces.get(p + 1) == Some(&g.origin_g))
            .ok_or_else(|| format!("`{}`, `{}` are not adjacent in [{}]", g.origin_f, g.origin_g, self.order))?;
        let index = self.lab.cell_index(&self.order, pos);
        self.push(Move::gen3_pair(index, cell.clone()))?;
        self.lab = glued_labelling_alt(&self.lab, g, cell).map_err(|e| e.to_string())?;
        self.order = contract(g, &self.order);
        self.check();
        Ok(self)
    }

    pub fn finish(self) -> MoveWord {
        MoveWord {
            source: self.source,
            moves: self.moves,
        }
    }
}
