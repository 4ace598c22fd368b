"""Connection and path cost: divergence of the endpoints' accumulated drift."""

from __future__ import annotations

import math

from .dynamics import chi
from .network import EntangledConnection
from .paths import EntangledPath
from .profiles import TimeWindow


def connection_cost(connection: EntangledConnection, window: TimeWindow) -> float:
    cx = chi(connection.profile_x, window)
    cy = chi(connection.profile_y, window)
    return math.hypot(cx.d_prob - cy.d_prob, cx.d_fid - cy.d_fid)


def path_cost(path: EntangledPath, window: TimeWindow) -> float:
    return math.fsum(connection_cost(e, window) for e in path.edges)
