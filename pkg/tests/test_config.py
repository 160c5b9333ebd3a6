from __future__ import annotations

import pytest
from nbubble.config import RunConfig, default_out
from nbubble.enums import Command, DomainKind, InitPreset
from nbubble.errors import FormatError, InvalidParameterError
from nbubble.settings import settings


class TestRunConfig:
    def test_round_trip(self) -> None:
        config = RunConfig(
            command=Command.SOLVE,
            out="runs/solve",
            domain="ellipse",
            semi_axes=(3.0, 1.5),
            d=0.05,
            refine_levels=2,
            init=InitPreset.CONSTANT,
        )
        data = config.to_dict()
        assert data["command"] == "solve"
        assert data["init"] == "constant"
        assert data["semi_axes"] == [3.0, 1.5]
        assert RunConfig.from_dict(dict(data)) == config

    def test_defaults(self) -> None:
        config = RunConfig.from_dict({"command": "moser", "out": "x"})
        assert config.command is Command.MOSER
        assert config.delta == settings.MOSER_DELTA
        assert config.eps_list == ()

    @pytest.mark.parametrize(
        "data",
        [
            {"command": "moser", "out": "x", "colour": 1},
            {"command": "dance", "out": "x"},
            {"out": "x"},
            {"command": "solve", "out": "x", "init": "random"},
            {"command": "sweep", "out": "x", "d_list": ["a"]},
        ],
    )
    def test_malformed(self, data: dict[str, object]) -> None:
        with pytest.raises(FormatError) as exc:
            RunConfig.from_dict(data)
        assert exc.value.kind == "config"
        assert exc.value.exit_code == 2

    def test_unknown_domain(self) -> None:
        with pytest.raises(InvalidParameterError):
            RunConfig(command=Command.SOLVE, out="x", domain="square")

    def test_build_domain(self) -> None:
        disk = RunConfig(command=Command.SOLVE, out="x", radius=2.0).build_domain()
        assert disk.kind is DomainKind.UNIT_DISK
        assert disk.radius == 2.0
        ellipse = RunConfig(command=Command.SOLVE, out="x", domain="ellipse").build_domain()
        assert ellipse.kind is DomainKind.GENERIC_CURVE

    def test_with_out(self) -> None:
        config = RunConfig(command=Command.PROFILE, out="a")
        moved = config.with_out("b")
        assert moved.out == "b"
        assert moved.out_dir.name == "b"
        assert config.out == "a"

    def test_default_out(self) -> None:
        assert default_out(Command.SWEEP).endswith("sweep")
        assert default_out(Command.SWEEP).startswith(settings.OUTPUT_ROOT)
