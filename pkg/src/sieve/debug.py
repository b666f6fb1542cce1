"""JSON dump of the holding basis and composition matrix for offline inspection."""
import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)


def debug_payload(B, M, labels=()):
    return {
        'prime': B.p,
        'basis': [
            {'index': i, 'coeffs': list(element.coeffs), 'count': B.counts[i]}
            for i, element in enumerate(B.elements)
        ],
        'rows': [
            {
                'label': labels[r] if r < len(labels) else None,
                'entries': [[col, str(exp)] for col, exp in sorted(row.items())],
            }
            for r, row in enumerate(M.rows)
        ],
    }


def dump_debug(path, B, M, labels=()):
    """
    Write the basis (coefficients lowest degree first) and sparse rows to ``path``.

    Args:
        path: destination file
        B: HoldingBasis
        M: CompositionMatrix over ``B``
        labels: display label per row
    """
    payload = debug_payload(B, M, list(labels))
    Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False), encoding='utf-8')
    logger.info("wrote debug dump with %d basis elements and %d rows to %s", len(B), len(M), path)
