# coding: utf-8
# run reports: assembly, structural check against the shipped schema, serialisation

import datetime
import json
import logging
import os
import sys

import jsonschema

from ..config import config as defaults
from ..tools import misc

logger = logging.getLogger(__name__)


def load_schema(path=defaults.REPORT_SCHEMA):
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def result_record(label, family, passed, max_residual=None, value=None, **extra):
    """One entry of report['results'], with maxResidual and/or value"""
    record = {'label': label, 'family': family, 'pass': bool(passed)}
    if max_residual is not None:
        record['maxResidual'] = float(max_residual)
    if value is not None:
        record['value'] = value
    record.update(extra)
    return record


def scalar(value):
    """float, or [re, im] for complex numbers"""
    value = complex(value)
    if value.imag != 0:
        return [value.real, value.imag]
    return value.real


def build_report(run_config, results, error=None, **extra):
    """Top-level report; overallPass is false when any result fails or an error was raised"""
    # paperRef keys each record to the defining relation family it checks
    results = sorted(({**r, 'paperRef': r.get('paperRef', r['family'])} for r in results), key=lambda r: r['label'])
    report = {'version': defaults.TOOL_VERSION,
              'timestamp': datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds'),
              'config': run_config.describe() if run_config is not None else None,
              'results': results,
              'overallPass': error is None and all(r['pass'] for r in results)}
    if error is not None:
        report['error'] = {'type': type(error).__name__, 'message': str(error)}
        evidence = getattr(error, 'evidence', None)
        if evidence is not None:
            report['error']['evidence'] = evidence
    report.update(extra)
    return report


def check_report(report, schema=None):
    """Schema violations of a report as 'path: message' strings (empty list when valid)"""
    schema = schema or load_schema()
    validator = jsonschema.Draft202012Validator(schema)
    problems = []
    for error in sorted(validator.iter_errors(report), key=lambda e: [str(part) for part in e.absolute_path]):
        path = '/'.join(str(part) for part in error.absolute_path) or 'report'
        problems.append(f'{path}: {error.message}')
    return problems


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2, default=float)


def to_text(report):
    lines = []
    for record in report['results']:
        amount = record.get('maxResidual', record.get('value'))
        status = 'skipped' if record.get('skipped') else ('pass' if record['pass'] else 'FAIL')
        lines.append(f"{record['label']}: {status} {amount}")
    if 'error' in report:
        lines.append(f"error: {report['error']['type']}: {report['error']['message']}")
    for warning in report.get('warnings', []):
        lines.append(f'warning: {warning}')
    lines.append(f"overallPass: {misc.to_str(report['overallPass'])}")
    return '\n'.join(lines) + '\n'


def write_report(report, out=None, fmt='json'):
    """Write to out (directories are created) or to standard output"""
    text = to_json(report) + '\n' if fmt == 'json' else to_text(report)
    if out is None:
        sys.stdout.write(text)
        return
    head, tail, root, ext = misc.head_tail_root_ext(out)
    if head:
        os.makedirs(head, exist_ok=True)
    with open(out, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f'[write_report] {tail} written')
