import json

import numpy as np
import pandas as pd

from convspec.cli.output import render_table


def test_negative_zero_and_precision():
    frame = pd.DataFrame({'l': [0, 1], 'x': [-0.0, 0.1]})
    assert render_table(frame) == 'l,x\n0,0\n1,0.10000000000000001\n'


def test_missing_values():
    frame = pd.DataFrame({'a': [1.0, np.nan], 'n': [1, 2]})
    assert render_table(frame) == 'a,n\n1,1\n,2\n'
    assert json.loads(render_table(frame, 'json'))['rows'] == [[1.0, 1], [None, 2]]


def test_json_keys_sorted():
    text = render_table(pd.DataFrame({'b': [2.5], 'a': [1]}), 'json', command='spectrum')
    assert text.index('"columns"') < text.index('"command"') < text.index('"rows"')
    assert json.loads(text)['columns'] == ['b', 'a']
