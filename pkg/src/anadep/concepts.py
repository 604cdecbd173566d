"""Minimal classification-style knowledge base.

Holds a concept taxonomy, the relations already established between concept
pairs (as labeled triples), and the relations a concept admits for a role.
No defaults, no classification -- subsumption and two relation sets only.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Set, Tuple

Triple = Tuple[str, str, str]


class ConceptKB:
    """Concept taxonomy plus established and admitted relations."""

    def __init__(self) -> None:
        self._parents: Dict[str, Set[str]] = {}
        self.role_names: Set[str] = set()
        self.established: Set[Triple] = set()
        self.permit: Set[Triple] = set()

    # -- construction -----------------------------------------------------

    def add_concept(self, name: str) -> None:
        self._parents.setdefault(name, set())

    def add_isa(self, sub: str, super_: str) -> None:
        self._check_concept(sub)
        self._check_concept(super_)
        if sub == super_ or self.isa_star(super_, sub):
            raise ValueError(f"taxonomy cycle: {sub} isa {super_}")
        self._parents[sub].add(super_)

    def add_role(self, name: str) -> None:
        self.role_names.add(name)

    def add_permit(self, head: str, role: str, filler: str) -> None:
        self._check_concept(head)
        self._check_role(role)
        self._check_concept(filler)
        self.permit.add((head, role, filler))

    def add_established(self, head: str, role: str, filler: str) -> None:
        self._check_concept(head)
        self._check_role(role)
        self._check_concept(filler)
        self.established.add((head, role, filler))

    # -- queries ----------------------------------------------------------

    def __contains__(self, name: str) -> bool:
        return name in self._parents

    def concepts(self) -> List[str]:
        return sorted(self._parents)

    def isa_star(self, sub: str, super_: str) -> bool:
        """Reflexive-transitive reachability in the taxonomy."""
        self._check_concept(sub)
        self._check_concept(super_)
        seen: Set[str] = set()
        stack = [sub]
        while stack:
            current = stack.pop()
            if current == super_:
                return True
            if current in seen:
                continue
            seen.add(current)
            stack.extend(self._parents[current])
        return False

    def permits(self, head: str, role: str, filler: str) -> bool:
        """True iff some admitted triple subsumes (head, role, filler).

        Permissions are inherited down the taxonomy: a triple admitting a
        filler for a concept also admits it for all its subconcepts.
        """
        self._check_role(role)
        self._check_concept(head)
        self._check_concept(filler)
        for h, r, f in self.permit:
            if r == role and self.isa_star(head, h) and self.isa_star(filler, f):
                return True
        return False

    def established_roles_between(self, a: str, b: str) -> Set[str]:
        """Role labels under which the pair (a, b) is established."""
        return {r for h, r, f in self.established if h == a and f == b}

    # -- internals --------------------------------------------------------

    def _check_concept(self, name: str) -> None:
        if name not in self._parents:
            raise LookupError(f"unknown concept: {name}")

    def _check_role(self, name: str) -> None:
        if name not in self.role_names:
            raise LookupError(f"unknown role: {name}")
