from homleib.core.logging import (
    configure_logging,
    get_logger,
    log_context,
    log_info,
    log_performance,
    logged_operation,
)


def test_file_log_carries_context(tmp_path):
    log_file = tmp_path / "homleib.log"
    configure_logging(log_file=str(log_file))
    with log_context(algebra="twodim", identity="hom_leibniz"):
        log_info("evaluating")
    log_info("outside")
    log_performance("check hom_leibniz (8 tuples)", 0.002)
    lines = log_file.read_text().splitlines()
    assert lines[0].startswith("[algebra=twodim, identity=hom_leibniz] ")
    assert lines[0].endswith("evaluating")
    assert not lines[1].startswith("[")
    assert lines[2].endswith("Performance: check hom_leibniz (8 tuples) took 2.00 ms")


def test_logged_operation_tags_the_algebra(tmp_path, twodim):
    log_file = tmp_path / "op.log"
    configure_logging(debug=True, log_file=str(log_file))

    @logged_operation("measure")
    def measure(p):
        return p.dim

    assert measure(twodim) == 2
    text = log_file.read_text()
    assert "[algebra=twodim]" in text
    assert "Starting measure" in text and "Completed measure" in text


def test_logger_is_shared():
    assert get_logger() is get_logger()
    assert not get_logger().propagate
