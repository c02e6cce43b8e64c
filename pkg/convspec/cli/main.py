import argparse
import logging
import sys

from ..utils.config import load_config
from ..utils.errors import ConvSpecError
from .commands import COMMANDS, PARAM_FLAGS
from .output import save_evolution_plot, write_gnuplot_script, write_table
from .verify import InvariantSuite, resolve_families

logger = logging.getLogger(__name__)


def _model_arguments():
    """所有子命令共享的模型与输出参数"""
    parser = argparse.ArgumentParser(add_help=False)
    model = parser.add_argument_group('模型')
    model.add_argument('--model', help='模型定义 JSON 文件')
    model.add_argument('--family', help='目录族名称')
    for name in PARAM_FLAGS:
        model.add_argument(f'--{name}', type=float, default=None, help=f'族参数 {name}')
    model.add_argument('--k0', type=int, default=1, help='模0的转换重数（≠1 时构造提升模型）')
    model.add_argument('--k1', type=int, default=1, help='模1的转换重数（≠1 时构造提升模型）')
    model.add_argument('--omega0', type=float, default=0.0, help='模0的自由频率')
    model.add_argument('--omega1', type=float, default=0.0, help='模1的自由频率')

    sector = parser.add_argument_group('扇区')
    sector.add_argument('--r0', type=int, default=0, help='余数 r0')
    sector.add_argument('--r1', type=int, default=0, help='余数 r1')
    sector.add_argument('--N', type=int, default=None, help='扇区层级 N')

    output = parser.add_argument_group('输出')
    output.add_argument('--format', choices=('csv', 'json'), default='csv', help='输出格式')
    output.add_argument('--out', default=None, help='输出文件，默认标准输出')
    output.add_argument('--tol', type=float, default=None, help='校验阈值，默认取 CONVSPEC_TOL')
    return parser


def build_parser():
    """
    构造命令行解析器

    Returns:
        argparse.ArgumentParser: 解析器
    """
    common = _model_arguments()
    parser = argparse.ArgumentParser(
        prog='convspec',
        description='双模光子转换哈密顿量的扇区谱分解、时间演化与校验')
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('spectrum', parents=[common], help='数值本征值与闭式谱')
    subparsers.add_parser('eigvec', parents=[common], help='本征矢多项式系数 P_n(E_l)')

    weights = subparsers.add_parser('weights', parents=[common], help='权函数 w_l')
    weights.add_argument('--normalized', action='store_true', help='除以 Σw 使权重之和为 1')

    evolve = subparsers.add_parser('evolve', parents=[common], help='期望值 ⟨X(t)⟩ 的时间演化')
    evolve.add_argument('--t-max', dest='t_max', type=float, default=1.0, help='最大时间')
    evolve.add_argument('--dt', type=float, default=0.1, help='时间步长')
    evolve.add_argument('--state', help='初态 JSON 文件，默认 |0⟩_μ')
    evolve.add_argument('--observable', help='可观测量 JSON 文件，默认模0光子数')
    evolve.add_argument('--plot', help='保存演化曲线 PNG')
    evolve.add_argument('--gnuplot', help='保存绘制 CSV 的 gnuplot 脚本')

    subparsers.add_parser('lift', parents=[common], help='提升模型各 (r0,r1) 扇区的系数表')

    verify = subparsers.add_parser('verify', parents=[common], help='运行不变量校验套件')
    verify.add_argument('--N-max', dest='N_max', type=int, default=12, help='最大扇区层级')
    verify.add_argument('--jobs', type=int, default=None, help='并行线程数，默认取 CONVSPEC_JOBS')
    verify.add_argument('--report', help='保存 Markdown 校验报告')
    verify.add_argument('--inject-fault', dest='inject_fault', action='store_true', help=argparse.SUPPRESS)
    return parser


def run_verify(args, config):
    suite = InvariantSuite(config, tol=args.tol, jobs=args.jobs, inject_fault=args.inject_fault)
    summary = suite.run(resolve_families(args.family), args.N_max)
    write_table(summary, args.format, args.out, command='verify')
    if args.report:
        suite.write_report(args.report)
    worst = suite.worst_offender()
    if worst is None:
        print("verify: PASS", file=sys.stderr)
        return 0
    message = (f"verify: FAIL 最坏项 {worst['check']} 残差 {worst['residual']:.3e} "
               f"超过阈值 {worst['tolerance']:.0e} ({worst['where']})")
    logger.error(message)
    print(message, file=sys.stderr)
    return 1


def run_command(args, config):
    if args.command == 'verify':
        return run_verify(args, config)
    frame = COMMANDS[args.command](args, config)
    write_table(frame, args.format, args.out, command=args.command)
    if args.command == 'evolve':
        if args.plot:
            save_evolution_plot(frame, args.plot)
        if args.gnuplot:
            write_gnuplot_script(args.gnuplot, args.out or 'evolve.csv', list(frame.columns))
    return 0


def main(argv=None):
    """
    命令行入口

    Args:
        argv (list, optional): 参数列表，默认取 sys.argv

    Returns:
        int: 退出码（0 成功，1 校验失败，2 参数或配置错误，3 数值错误）
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        # 加载配置
        config = load_config()
    except ConvSpecError as e:
        print(f"配置错误: {e}", file=sys.stderr)
        return e.exit_code

    logging.basicConfig(
        level=getattr(logging, config['logging']['level']),
        format=config['logging']['format'],
        stream=sys.stderr,
    )

    try:
        return run_command(args, config)
    except ConvSpecError as e:
        logger.error(f"{args.command} 失败: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        print(f"错误 ({type(e).__name__}): {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        # 输出路径不可写（目录不存在、权限不足等）按参数错误处理
        path = e.filename if e.filename is not None else '?'
        logger.error(f"{args.command} 无法写入 {path}: {e.strerror or e}")
        print(f"错误 (OSError): 无法写入 {path}: {e.strerror or e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
