"""Exception taxonomy shared across the package.

Two failure families matter to callers: the scene violates a stated
assumption (user-fixable, CLI exit 1) or the library contradicted itself
(a bug or a broken invariant, CLI exit 2).
"""

from __future__ import annotations


class SceneError(Exception):
    """The input scene violates a precondition or assumption.

    Carries a machine-readable reason code plus a human sentence.
    """

    def __init__(self, reason: str, detail: str, witness=None):
        super().__init__(f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail
        self.witness = witness


class ConsistencyError(Exception):
    """An internal cross-check failed. Not a user error."""
