"""
CLI 输出：CSV（17 位有效数字、LF 换行）和 JSON（键排序）
"""
import json
import math
import sys
import logging
from pathlib import Path

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'


def _clean_frame(frame):
    """浮点列加 0.0 以消除 −0"""
    frame = frame.copy()
    for column in frame.columns:
        if pd.api.types.is_float_dtype(frame[column]):
            frame[column] = frame[column] + 0.0
    return frame


def _json_value(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value) + 0.0
        return value if math.isfinite(value) else None
    return value


def render_table(frame, fmt='csv', command=None):
    """
    把表格渲染为字符串

    Args:
        frame (pandas.DataFrame): 表格
        fmt (str): 'csv' 或 'json'
        command (str, optional): 命令名，写入 JSON

    Returns:
        str: 渲染结果
    """
    frame = _clean_frame(frame)
    if fmt == 'csv':
        return frame.to_csv(float_format=FLOAT_FORMAT, lineterminator='\n', index=False)
    if fmt == 'json':
        payload = {
            'columns': [str(c) for c in frame.columns],
            'rows': [[_json_value(v) for v in row] for row in frame.itertuples(index=False, name=None)],
        }
        if command is not None:
            payload['command'] = command
        return json.dumps(payload, sort_keys=True) + '\n'
    raise ValueError(f"不支持的输出格式: {fmt}")


def write_text(text, out=None):
    """写到文件或标准输出"""
    if out is None or out == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.info(f"结果已保存到: {path}")


def write_table(frame, fmt='csv', out=None, command=None):
    write_text(render_table(frame, fmt, command), out)


def write_gnuplot_script(path, data_path, columns):
    """
    生成绘制演化 CSV 的 gnuplot 脚本

    Args:
        path (str): 脚本路径
        data_path (str): CSV 数据路径
        columns (list): CSV 列名
    """
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 't'",
        f"plot '{data_path}' using 1:2 with lines, \\",
        f"     '' using 1:{len(columns)} with lines",
        "",
    ]
    write_text('\n'.join(lines), path)


def save_evolution_plot(frame, path):
    """用 matplotlib 绘制 Re⟨X⟩ 与范数随时间的变化"""
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(frame['t'], frame['Re_X'], label='Re<X>')
    ax.plot(frame['t'], frame['norm'], label='norm', linestyle='--')
    ax.set_xlabel('t')
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    logger.info(f"演化曲线已保存到: {path}")
