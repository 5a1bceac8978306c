"""Tests for command dispatch."""

from unittest.mock import AsyncMock, patch

import pytest

from gmtlab.cli.dispatchers.commands import COMMAND_HELP, HANDLERS, CommandDispatcher
from gmtlab.core.constants import EXIT_INPUT_ERROR


class TestCommandTable:
    """Tests for the command registry."""

    def test_every_command_has_help(self):
        """Test that the help text covers exactly the registered commands."""
        assert len(HANDLERS) == 13
        assert list(COMMAND_HELP) == list(HANDLERS)


class TestCommandDispatcher:
    """Tests for CommandDispatcher."""

    @pytest.mark.asyncio
    async def test_unknown_command(self, mock_context):
        """Test that an unregistered command is an input error."""
        dispatcher = CommandDispatcher(mock_context)

        assert await dispatcher.dispatch("nope") == EXIT_INPUT_ERROR

    @pytest.mark.asyncio
    async def test_dispatch_calls_handler(self, mock_context):
        """Test that dispatch awaits the matching handler and returns its code."""
        with patch(
            "gmtlab.cli.handlers.scan.ScanHandler.handle",
            new_callable=AsyncMock,
            return_value=1,
        ) as mock_handle:
            dispatcher = CommandDispatcher(mock_context)

            result = await dispatcher.dispatch("scan")

        assert result == 1
        mock_handle.assert_awaited_once()
