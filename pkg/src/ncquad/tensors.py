"""Multilinear algebra: dense tensors with labeled slots, contraction by
functionals, and reshaping into matrices.

Shapes stay tiny here (axes of length 2, arity at most 4); entries are
exact scalars, stored flat in row-major order.
"""

from __future__ import annotations

from .linalg import Matrix


class Tensor:
    __slots__ = ("field", "shape", "slots", "entries")

    def __init__(self, field, shape, entries, slots):
        shape = tuple(int(s) for s in shape)
        slots = tuple(slots)
        if len(slots) != len(shape):
            raise ValueError("one slot label per axis")
        if len(set(slots)) != len(slots):
            raise ValueError("slot labels must be pairwise distinct")
        entries = tuple(field.of(x) for x in entries)
        size = 1
        for s in shape:
            size *= s
        if len(entries) != size:
            raise ValueError(f"expected {size} entries, got {len(entries)}")
        self.field = field
        self.shape = shape
        self.slots = slots
        self.entries = entries

    @classmethod
    def from_nested(cls, field, nested, slots) -> "Tensor":
        shape = []
        probe = nested
        while isinstance(probe, (list, tuple)):
            shape.append(len(probe))
            probe = probe[0]
        flat = []

        def walk(node, depth):
            if depth == len(shape):
                flat.append(node)
                return
            if len(node) != shape[depth]:
                raise ValueError("ragged nested entries")
            for child in node:
                walk(child, depth + 1)

        walk(nested, 0)
        return cls(field, shape, flat, slots)

    @property
    def arity(self) -> int:
        return len(self.shape)

    def _strides(self) -> list[int]:
        strides = [1] * self.arity
        for k in range(self.arity - 2, -1, -1):
            strides[k] = strides[k + 1] * self.shape[k + 1]
        return strides

    def entry(self, idx):
        strides = self._strides()
        flat = sum(i * s for i, s in zip(idx, strides))
        return self.entries[flat]

    def is_zero(self) -> bool:
        return all(not x for x in self.entries)

    def nonzero_count(self) -> int:
        return sum(1 for x in self.entries if x)

    def contract(self, slot: int, functional) -> "Tensor":
        """Pair axis ``slot`` against a functional (coefficient sequence).

        The arity drops by one; the result is linear in both the tensor
        and the functional.
        """
        if not 0 <= slot < self.arity:
            raise ValueError(f"slot {slot} out of range for arity {self.arity}")
        functional = tuple(self.field.of(c) for c in functional)
        if len(functional) != self.shape[slot]:
            raise ValueError("functional length does not match the slot")
        strides = self._strides()
        new_shape = self.shape[:slot] + self.shape[slot + 1 :]
        new_slots = self.slots[:slot] + self.slots[slot + 1 :]
        size = 1
        for s in new_shape:
            size *= s
        new_strides = [1] * len(new_shape)
        for k in range(len(new_shape) - 2, -1, -1):
            new_strides[k] = new_strides[k + 1] * new_shape[k + 1]
        out = []
        for flat in range(size):
            idx = []
            rem = flat
            for st in new_strides:
                idx.append(rem // st)
                rem %= st
            full = idx[:slot] + [0] + idx[slot:]
            s = self.field.zero
            for a, c in enumerate(functional):
                full[slot] = a
                s = s + c * self.entries[sum(i * st for i, st in zip(full, strides))]
            out.append(s)
        return Tensor(self.field, new_shape, out, new_slots)

    def reshape(self, row_slots, col_slots) -> Matrix:
        """Matrix whose (row, col) multi-indices run over the given slot
        positions, row-major in each group."""
        row_slots = tuple(row_slots)
        col_slots = tuple(col_slots)
        if sorted(row_slots + col_slots) != list(range(self.arity)):
            raise ValueError("row and column slots must partition the axes")
        strides = self._strides()

        def group_indices(slot_group):
            dims = [self.shape[s] for s in slot_group]
            total = 1
            for d in dims:
                total *= d
            out = []
            for flat in range(total):
                idx = []
                rem = flat
                for k in range(len(dims)):
                    block = 1
                    for d in dims[k + 1 :]:
                        block *= d
                    idx.append(rem // block)
                    rem %= block
                out.append(tuple(idx))
            return out

        rows_idx = group_indices(row_slots)
        cols_idx = group_indices(col_slots)
        rows = []
        for ri in rows_idx:
            row = []
            for ci in cols_idx:
                full = [0] * self.arity
                for s, v in zip(row_slots, ri):
                    full[s] = v
                for s, v in zip(col_slots, ci):
                    full[s] = v
                row.append(self.entries[sum(i * st for i, st in zip(full, strides))])
            rows.append(row)
        return Matrix(self.field, rows, ncols=len(cols_idx))

    def flatten(self) -> tuple:
        return self.entries

    def as_nested(self):
        def build(depth, offset, strides):
            if depth == self.arity:
                return self.entries[offset]
            return [
                build(depth + 1, offset + i * strides[depth], strides)
                for i in range(self.shape[depth])
            ]

        return build(0, 0, self._strides())

    def scale(self, c) -> "Tensor":
        c = self.field.of(c)
        return Tensor(self.field, self.shape, [c * x for x in self.entries], self.slots)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.shape != other.shape or self.slots != other.slots or self.field != other.field:
            raise ValueError("tensor shape/slot mismatch")
        return Tensor(
            self.field,
            self.shape,
            [a + b for a, b in zip(self.entries, other.entries)],
            self.slots,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.field == other.field
            and self.shape == other.shape
            and self.slots == other.slots
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.slots, self.entries))

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, slots={self.slots})"
