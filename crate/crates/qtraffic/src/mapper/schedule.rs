//! Greedy wave packing for teleport-swap events.
//!
//! The qubit movements of one slice transition are packed into parallel
//! waves. Within a wave every physical qubit participates in at most one
//! teleportation and every core pair carries at most one teleport-swap.
//! Opposite-direction movers between the same two cores exchange places in
//! a single swap; a lone mover pairs with an idle qubit of its destination
//! core when one exists, and otherwise swaps with an occupant that itself
//! has a pending departure, which carries that occupant one hop toward its
//! own destination.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapper::Architecture;

/// Physical slot occupancy: which hardware qubit currently holds each
/// virtual state, and which slots are idle per core.
#[derive(Debug, Clone)]
pub struct DeviceSlots {
    capacity: usize,
    slot_of: Vec<usize>,
    /// Sorted idle slot ids per core.
    free: Vec<Vec<usize>>,
}

impl DeviceSlots {
    /// Identity fill: virtual qubit `q` sits on physical slot `q`, in core
    /// `q / capacity`; the remaining slots are idle.
    pub fn identity_fill(arch: &Architecture, width: usize) -> DeviceSlots {
        let capacity = arch.capacity();
        let slot_of: Vec<usize> = (0..width).collect();
        let mut free = vec![Vec::new(); arch.cores()];
        for slot in width..arch.cores() * capacity {
            free[slot / capacity].push(slot);
        }
        DeviceSlots {
            capacity,
            slot_of,
            free,
        }
    }

    pub fn slot_of(&self, qubit: usize) -> usize {
        self.slot_of[qubit]
    }

    pub fn core_of(&self, qubit: usize) -> usize {
        self.slot_of[qubit] / self.capacity
    }

    fn free_count(&self, core: usize) -> usize {
        self.free[core].len()
    }

    fn swap_slots(&mut self, a: usize, b: usize) {
        self.slot_of.swap(a, b);
    }

    /// Move `q` onto the lowest idle slot of `core`. The vacated slot is
    /// returned, not released: a slot freed mid-wave must not serve another
    /// teleportation until the next wave.
    fn move_to_free(&mut self, q: usize, core: usize) -> (usize, usize) {
        let new_slot = self.free[core].remove(0);
        let old_slot = self.slot_of[q];
        self.slot_of[q] = new_slot;
        (new_slot, old_slot)
    }

    fn release(&mut self, slot: usize) {
        let core = slot / self.capacity;
        let pos = self.free[core].binary_search(&slot).unwrap_err();
        self.free[core].insert(pos, slot);
    }
}

/// The partner on the other end of a teleport-swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Partner {
    /// A state-carrying qubit moving in the opposite direction.
    Qubit(usize),
    /// An idle physical qubit of the destination core.
    Idle,
}

/// One logical qubit movement, scheduled.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduledMove {
    pub qubit: usize,
    pub from_core: usize,
    pub to_core: usize,
    /// Wave in which the state lands at its destination.
    pub wave: usize,
    pub partner: Partner,
    /// Physical slot the state occupied before the transition started.
    pub src_slot: usize,
}

/// Schedule of one slice transition.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TransitionSchedule {
    pub waves: usize,
    /// Communication duration in sub-slices: `waves * tau`.
    pub duration: usize,
    pub moves: Vec<ScheduledMove>,
    /// Physical slots engaged in each wave, sorted.
    pub wave_slots: Vec<Vec<usize>>,
    /// Logical movements completing in each wave.
    pub completions: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Pending {
    qubit: usize,
    orig_from: usize,
    cur_from: usize,
    to: usize,
}

enum Action {
    /// Two movers exchanging cores, or a transit swap carrying an occupant
    /// of the full destination one hop along its own route.
    Swap {
        mover: usize,
        other: usize,
        other_completes: bool,
    },
    /// Lone mover landing on an idle slot.
    Solo { mover: usize },
}

/// Pack the movements `(qubit, from_core, to_core)` of one transition into
/// waves, updating the slot state as states land.
pub fn teleport_schedule(
    movements: &[(usize, usize, usize)],
    slots: &mut DeviceSlots,
    tau: usize,
) -> Result<TransitionSchedule> {
    let mut pending: Vec<Pending> = movements
        .iter()
        .map(|&(qubit, from, to)| {
            debug_assert_eq!(slots.core_of(qubit), from);
            Pending {
                qubit,
                orig_from: from,
                cur_from: from,
                to,
            }
        })
        .collect();
    pending.sort_by_key(|m| m.qubit);

    let src_slots: Vec<usize> = pending.iter().map(|m| slots.slot_of(m.qubit)).collect();
    let src_slot_of =
        |q: usize, pend: &[Pending]| src_slots[pend.iter().position(|m| m.qubit == q).unwrap()];

    let mut out = TransitionSchedule::default();
    let all: Vec<Pending> = pending.clone();

    while !pending.is_empty() {
        let wave = out.waves;
        let mut participants: BTreeSet<usize> = BTreeSet::new();
        let mut used_links: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut free_left: Vec<usize> = (0..slots.free.len())
            .map(|c| slots.free_count(c))
            .collect();
        let mut actions: Vec<Action> = Vec::new();

        for i in 0..pending.len() {
            let (qubit, cur_from, to) = {
                let m = &pending[i];
                (m.qubit, m.cur_from, m.to)
            };
            if participants.contains(&qubit) {
                continue;
            }
            let link = (cur_from.min(to), cur_from.max(to));
            if used_links.contains(&link) {
                continue;
            }

            let opposite = pending
                .iter()
                .find(|o| {
                    o.qubit != qubit
                        && !participants.contains(&o.qubit)
                        && o.cur_from == to
                        && o.to == cur_from
                })
                .map(|o| o.qubit);

            if let Some(other) = opposite {
                participants.insert(qubit);
                participants.insert(other);
                used_links.insert(link);
                actions.push(Action::Swap {
                    mover: qubit,
                    other,
                    other_completes: true,
                });
            } else if free_left[to] > 0 {
                free_left[to] -= 1;
                participants.insert(qubit);
                used_links.insert(link);
                actions.push(Action::Solo { mover: qubit });
            } else {
                // Destination full: borrow an occupant that must leave anyway.
                let victim = pending
                    .iter()
                    .find(|o| {
                        o.qubit != qubit
                            && !participants.contains(&o.qubit)
                            && o.cur_from == to
                    })
                    .map(|o| o.qubit);
                if let Some(other) = victim {
                    participants.insert(qubit);
                    participants.insert(other);
                    used_links.insert(link);
                    actions.push(Action::Swap {
                        mover: qubit,
                        other,
                        other_completes: false,
                    });
                }
                // No victim: this mover waits for a later wave.
            }
        }

        if actions.is_empty() {
            // Unreachable for capacity-valid assignments: a full destination
            // core always holds a pending departure.
            return Err(Error::Infeasible {
                slice: 0,
                detail: "teleport scheduling made no progress".into(),
            });
        }

        let mut engaged: Vec<usize> = Vec::new();
        let mut completions = 0usize;
        let mut vacated: Vec<usize> = Vec::new();
        for action in actions {
            match action {
                Action::Swap {
                    mover,
                    other,
                    other_completes,
                } => {
                    engaged.push(slots.slot_of(mover));
                    engaged.push(slots.slot_of(other));
                    slots.swap_slots(mover, other);
                    let mover_from = remove_pending(&mut pending, mover);
                    out.moves.push(ScheduledMove {
                        qubit: mover,
                        from_core: mover_from.orig_from,
                        to_core: mover_from.to,
                        wave,
                        partner: Partner::Qubit(other),
                        src_slot: src_slot_of(mover, &all),
                    });
                    completions += 1;
                    if other_completes {
                        let other_from = remove_pending(&mut pending, other);
                        out.moves.push(ScheduledMove {
                            qubit: other,
                            from_core: other_from.orig_from,
                            to_core: other_from.to,
                            wave,
                            partner: Partner::Qubit(mover),
                            src_slot: src_slot_of(other, &all),
                        });
                        completions += 1;
                    } else {
                        let entry = pending
                            .iter_mut()
                            .find(|m| m.qubit == other)
                            .expect("transit victim is pending");
                        entry.cur_from = slots.core_of(other);
                    }
                }
                Action::Solo { mover } => {
                    engaged.push(slots.slot_of(mover));
                    let entry = remove_pending(&mut pending, mover);
                    let (new_slot, old_slot) = slots.move_to_free(mover, entry.to);
                    vacated.push(old_slot);
                    engaged.push(new_slot);
                    out.moves.push(ScheduledMove {
                        qubit: mover,
                        from_core: entry.orig_from,
                        to_core: entry.to,
                        wave,
                        partner: Partner::Idle,
                        src_slot: src_slot_of(mover, &all),
                    });
                    completions += 1;
                }
            }
        }
        debug_assert_eq!(
            {
                let mut check = engaged.clone();
                check.sort_unstable();
                check.dedup();
                check.len()
            },
            engaged.len(),
            "a physical qubit participated twice in one wave"
        );
        for slot in vacated {
            slots.release(slot);
        }
        engaged.sort_unstable();
        out.wave_slots.push(engaged);
        out.completions.push(completions);
        out.waves += 1;
    }

    out.duration = out.waves * tau;
    out.moves.sort_by_key(|m| (m.wave, m.qubit));
    Ok(out)
}

fn remove_pending(pending: &mut Vec<Pending>, qubit: usize) -> Pending {
    let pos = pending
        .iter()
        .position(|m| m.qubit == qubit)
        .expect("qubit is pending");
    pending.remove(pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn device(cores: usize, capacity: usize, width: usize) -> DeviceSlots {
        DeviceSlots::identity_fill(&Architecture::new(cores, capacity).unwrap(), width)
    }

    #[test]
    fn no_movements_no_duration() {
        let mut slots = device(2, 2, 4);
        let sched = teleport_schedule(&[], &mut slots, 3).unwrap();
        assert_eq!(sched.waves, 0);
        assert_eq!(sched.duration, 0);
    }

    #[test]
    fn opposite_movers_share_one_wave() {
        let mut slots = device(2, 2, 4);
        // Qubit 1 goes to core 1, qubit 2 comes back: one teleport-swap.
        let sched = teleport_schedule(&[(1, 0, 1), (2, 1, 0)], &mut slots, 1).unwrap();
        assert_eq!(sched.waves, 1);
        assert_eq!(sched.moves.len(), 2);
        assert_eq!(sched.moves[0].partner, Partner::Qubit(2));
        assert_eq!(sched.moves[1].partner, Partner::Qubit(1));
        // They exchanged physical slots.
        assert_eq!(slots.slot_of(1), 2);
        assert_eq!(slots.slot_of(2), 1);
    }

    #[test]
    fn same_direction_movers_serialize_on_the_link() {
        // Three qubits all crossing from core 0 to core 1; destination has
        // idle slots but the link carries one swap per wave.
        let mut slots = device(2, 8, 10);
        let sched =
            teleport_schedule(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)], &mut slots, 1).unwrap();
        assert_eq!(sched.waves, 3);
        assert_eq!(sched.completions, vec![1, 1, 1]);
        for m in &sched.moves {
            assert_eq!(m.partner, Partner::Idle);
        }
        for q in 0..3 {
            assert_eq!(slots.core_of(q), 1);
        }
    }

    #[test]
    fn distinct_core_pairs_run_in_parallel() {
        let mut slots = device(4, 2, 8);
        // 0->core1 paired with 2->core0, and 4->core3 paired with 6->core2.
        let sched = teleport_schedule(
            &[(0, 0, 1), (2, 1, 0), (4, 2, 3), (6, 3, 2)],
            &mut slots,
            1,
        )
        .unwrap();
        assert_eq!(sched.waves, 1);
        assert_eq!(sched.moves.len(), 4);
    }

    #[test]
    fn full_destination_uses_a_transit_swap() {
        // Full device, three cores of one slot each, rotating 0 -> 1 -> 2 -> 0.
        let mut slots = device(3, 1, 3);
        let sched = teleport_schedule(
            &[(0, 0, 1), (1, 1, 2), (2, 2, 0)],
            &mut slots,
            1,
        )
        .unwrap();
        // No idle slots and no opposite pairs: the cycle resolves by transit
        // in two waves, and every state still reaches its destination.
        assert_eq!(sched.moves.len(), 3);
        assert_eq!(slots.core_of(0), 1);
        assert_eq!(slots.core_of(1), 2);
        assert_eq!(slots.core_of(2), 0);
        assert_eq!(sched.waves, 2);
        // Logical from/to are the assignment delta, not the transit hops.
        for m in &sched.moves {
            assert_eq!(m.to_core, (m.from_core + 1) % 3);
        }
    }

    #[test]
    fn slot_vacated_mid_wave_is_not_reused_until_the_next_wave() {
        // Core 0 holds qubits 0 and 2 with slot 1 idle after qubit 1 leaves.
        let mut slots = device(3, 3, 7);
        teleport_schedule(&[(1, 0, 2)], &mut slots, 1).unwrap();
        assert_eq!(slots.slot_of(1), 7);

        // Same wave: qubit 0 departs core 0 (vacating slot 0) while qubit 3
        // arrives. The arrival must land on slot 1, which was idle at wave
        // start, not on the slot qubit 0 is vacating simultaneously.
        let sched = teleport_schedule(&[(0, 0, 2), (3, 1, 0)], &mut slots, 1).unwrap();
        assert_eq!(sched.waves, 1);
        assert_eq!(slots.slot_of(3), 1);
        assert_eq!(slots.slot_of(0), 8);
        // Slot 0 is available again afterwards.
        assert_eq!(slots.free[0], vec![0]);
    }

    #[test]
    fn solo_mover_takes_lowest_idle_slot() {
        let mut slots = device(2, 3, 4); // slots 4, 5 idle in core 1
        let sched = teleport_schedule(&[(0, 0, 1)], &mut slots, 2).unwrap();
        assert_eq!(sched.waves, 1);
        assert_eq!(sched.duration, 2);
        assert_eq!(slots.slot_of(0), 4);
        // Its old slot is idle again.
        assert_eq!(slots.free[0], vec![0]);
        assert_eq!(slots.free[1], vec![5]);
    }
}
